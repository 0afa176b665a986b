use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::{gcd_transform, IntMatrix};

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·M = H`.
///
/// `H` is in row echelon form with positive pivots, and every entry above a
/// pivot lies in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for j in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            if !h[(i, j)].is_zero() {
                let t = gcd_transform(&h[(r, j)], &h[(i, j)]);
                h.combine_rows(r, i, &t);
                u.combine_rows(r, i, &t);
            }
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, j)].clone();
        for i in 0..r {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-q);
            }
        }
        r += 1;
    }
    (h, u)
}
