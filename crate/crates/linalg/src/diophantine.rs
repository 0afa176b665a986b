use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::matrix::{IntMatrix, Matrix};
use crate::rational::{format_rational, Rational};
use crate::snf::snf;

/// All integer solutions of `M·x = c`: `particular + Σ kᵢ·basisᵢ`, `kᵢ ∈ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DioSolution {
    pub particular: Vec<BigInt>,
    pub homogeneous_basis: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// Equation `row` has integer coefficients but a non-integral right-hand side.
    NonIntegral { row: usize },
    /// The combined equation has coefficients with gcd `invariant_factor`, which does not divide the constant.
    NonDivisible { invariant_factor: BigInt },
    /// The combination has all coefficients zero but a nonzero constant.
    Inconsistent,
}

/// An integer combination of the equations that has no integer solution.
///
/// `combination · M = coefficients` and `combination · c = constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasibility {
    pub combination: Vec<BigInt>,
    pub coefficients: Vec<BigInt>,
    pub constant: Rational,
    pub reason: InfeasibleReason,
}

impl Infeasibility {
    /// Recomputes the combined equation from `m` and `c` and checks that it has no integer solution.
    pub fn verify(&self, m: &IntMatrix, c: &[Rational]) -> bool {
        if self.combination.len() != m.rows() || c.len() != m.rows() {
            return false;
        }
        let coeffs = m.vec_mul(&self.combination);
        let constant = self
            .combination
            .iter()
            .zip(c)
            .fold(Rational::zero(), |acc, (k, ci)| acc + Rational::from_integer(k.clone()) * ci);
        if coeffs != self.coefficients || constant != self.constant {
            return false;
        }
        let g = coeffs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return !constant.is_zero();
        }
        !(constant / Rational::from_integer(g)).is_integer()
    }

    /// gcd of the combined coefficients.
    pub fn coefficient_gcd(&self) -> BigInt {
        self.coefficients.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            if !a.is_zero() {
                terms.push(format!("{a}*z{}", i + 1));
            }
        }
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{lhs} = {}", format_rational(&self.constant))?;
        match &self.reason {
            InfeasibleReason::NonIntegral { row } => write!(f, " (equation {} has a non-integral constant)", row + 1),
            InfeasibleReason::NonDivisible { invariant_factor } => {
                write!(f, " (invariant factor {invariant_factor} does not divide the constant)")
            }
            InfeasibleReason::Inconsistent => write!(f, " (inconsistent over the rationals)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DioOutcome {
    Feasible(DioSolution),
    Infeasible(Infeasibility),
}

impl DioOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, DioOutcome::Feasible(_))
    }
}

/// Solves `M·x = c` over the integers through the Smith form of `M`.
pub fn solve_diophantine(m: &IntMatrix, c: &[Rational]) -> Result<DioOutcome, LinalgError> {
    if c.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("right-hand side of length {}", m.rows()),
            found: format!("length {}", c.len()),
        });
    }
    let n = m.cols();
    if let Some(row) = c.iter().position(|ci| !ci.is_integer()) {
        let mut combination = vec![BigInt::zero(); m.rows()];
        combination[row] = BigInt::one();
        return Ok(DioOutcome::Infeasible(Infeasibility {
            combination,
            coefficients: m.row(row).to_vec(),
            constant: c[row].clone(),
            reason: InfeasibleReason::NonIntegral { row },
        }));
    }

    // U·M·V = D, so M·x = c  <=>  D·y = U·c with x = V·y.
    let s = snf(m);
    let uc: Vec<Rational> = s.u.to_rational().mul_vec(c);
    let rank = s.rank();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in uc.iter().enumerate() {
        let combination = s.u.row(i).to_vec();
        let witness = |reason| {
            DioOutcome::Infeasible(Infeasibility {
                coefficients: m.vec_mul(&combination),
                combination: combination.clone(),
                constant: ci.clone(),
                reason,
            })
        };
        if i < rank {
            let q = ci / Rational::from_integer(s.d[(i, i)].clone());
            if !q.is_integer() {
                return Ok(witness(InfeasibleReason::NonDivisible { invariant_factor: s.d[(i, i)].clone() }));
            }
            y[i] = q.to_integer();
        } else if !ci.is_zero() {
            return Ok(witness(InfeasibleReason::Inconsistent));
        }
    }
    let particular = s.v.mul_vec(&y);
    let homogeneous_basis = (rank..n).map(|j| s.v.column(j)).collect();
    Ok(DioOutcome::Feasible(DioSolution { particular, homogeneous_basis }))
}

impl DioSolution {
    /// `particular + Σ kᵢ·basisᵢ`.
    pub fn instantiate(&self, coefficients: &[BigInt]) -> Vec<BigInt> {
        let mut x = self.particular.clone();
        for (k, b) in coefficients.iter().zip(&self.homogeneous_basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += k * bi;
            }
        }
        x
    }

    /// Whether `x` lies in the solution lattice.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let diff: Vec<Rational> = x.iter().zip(&self.particular).map(|(a, b)| Rational::from_integer(a - b)).collect();
        if self.homogeneous_basis.is_empty() {
            return diff.iter().all(Zero::is_zero);
        }
        let Ok(basis) = Matrix::from_columns(x.len(), &self.homogeneous_basis) else { return false };
        matches!(solve_diophantine(&basis, &diff), Ok(DioOutcome::Feasible(_)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn four_y_plus_four_x_equals_two() {
        let m = IntMatrix::from_i64_rows(&[&[4, 4]]);
        match solve_diophantine(&m, &ints(&[2])).unwrap() {
            DioOutcome::Infeasible(w) => {
                assert!(w.verify(&m, &ints(&[2])));
                assert_eq!(w.coefficient_gcd(), BigInt::from(4));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn minus_four_y_equals_minus_two() {
        let m = IntMatrix::from_i64_rows(&[&[-4]]);
        let out = solve_diophantine(&m, &ints(&[-2])).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn identity_homogeneous() {
        let m = IntMatrix::identity(2);
        let out = solve_diophantine(&m, &ints(&[0, 0])).unwrap();
        assert_eq!(
            out,
            DioOutcome::Feasible(DioSolution { particular: vec![0.into(), 0.into()], homogeneous_basis: vec![] })
        );
    }

    #[test]
    fn non_integral_constant() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0]]);
        let c = vec![Rational::new(1.into(), 2.into())];
        match solve_diophantine(&m, &c).unwrap() {
            DioOutcome::Infeasible(w) => {
                assert_eq!(w.reason, InfeasibleReason::NonIntegral { row: 0 });
                assert!(w.verify(&m, &c));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rationally_inconsistent() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        let c = ints(&[1, 3]);
        match solve_diophantine(&m, &c).unwrap() {
            DioOutcome::Infeasible(w) => {
                assert_eq!(w.reason, InfeasibleReason::Inconsistent);
                assert!(w.verify(&m, &c));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let m = IntMatrix::identity(2);
        assert!(solve_diophantine(&m, &ints(&[1])).is_err());
    }

    #[test]
    fn solution_lattice_membership() {
        let m = IntMatrix::from_i64_rows(&[&[2, 4, 6]]);
        let DioOutcome::Feasible(s) = solve_diophantine(&m, &ints(&[8])).unwrap() else { panic!() };
        assert_eq!(s.homogeneous_basis.len(), 2);
        assert!(s.contains(&[1.into(), 0.into(), 1.into()]));
        assert!(s.contains(&[4.into(), 0.into(), 0.into()]));
        assert!(!s.contains(&[1.into(), 1.into(), 1.into()]));
    }
}
