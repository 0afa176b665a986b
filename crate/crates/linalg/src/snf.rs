use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::{gcd_transform, IntMatrix};

/// Smith normal form `U·M·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<num_bigint::BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
pub fn snf(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[(i, j)].is_zero())
            .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let g = gcd_transform(&d[(t, t)], &d[(i, t)]);
                    d.combine_rows(t, i, &g);
                    u.combine_rows(t, i, &g);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let g = gcd_transform(&d[(t, t)], &d[(t, j)]);
                    d.combine_cols(t, j, &g);
                    v.combine_cols(t, j, &g);
                }
            }
            if (t + 1..rows).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // divisibility: pull an offending row into the pivot row and redo
            let pivot = d[(t, t)].clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = num_bigint::BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check(m: &IntMatrix) -> Smith {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        s
    }

    #[test]
    fn identity() {
        assert!(check(&IntMatrix::identity(2)).d.is_identity());
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 4], &[1, 3]]));
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn already_diagonal() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_i64_rows(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 0]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn rectangular_and_empty() {
        let s = check(&IntMatrix::from_i64_rows(&[&[4, 4]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(4)]);
        let s = check(&IntMatrix::zeros(3, 0));
        assert_eq!(s.rank(), 0);
    }
}
