use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::matrix::IntMatrix;
use crate::snf::snf;

/// Basis (as columns) of the smallest pure sublattice of `Z^ambient_dim`
/// containing the given vectors.
pub fn saturate(vectors: &[Vec<num_bigint::BigInt>], ambient_dim: usize) -> Result<IntMatrix, LinalgError> {
    if vectors.is_empty() {
        return Ok(IntMatrix::zeros(ambient_dim, 0));
    }
    let a = IntMatrix::from_columns(ambient_dim, vectors)?;
    // U·A·V = D; the rational span of A is U⁻¹·span(e₁..e_r), and its
    // integral points are exactly U⁻¹·(Z^r ⊕ 0).
    let s = snf(&a);
    let r = s.rank();
    let u_inv = s.u.inverse_unimodular().ok_or(LinalgError::NotUnimodular)?;
    Ok(u_inv.submatrix(0..ambient_dim, 0..r))
}

/// Unimodular `Q` whose first `r` columns are exactly the columns of `pure_basis`.
pub fn complete_basis(pure_basis: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let (n, r) = (pure_basis.rows(), pure_basis.cols());
    if r > n {
        return Err(LinalgError::NotIndependent);
    }
    if r == 0 {
        return Ok(IntMatrix::identity(n));
    }
    // U·B·V = [I_r; 0]  =>  B = U⁻¹[:, :r]·V⁻¹, so Q = U⁻¹·diag(V⁻¹, I).
    let s = snf(pure_basis);
    for i in 0..r {
        let d = &s.d[(i, i)];
        if d.is_zero() {
            return Err(LinalgError::NotIndependent);
        }
        if !d.is_one() {
            return Err(LinalgError::NotPure(d.to_string()));
        }
    }
    let u_inv = s.u.inverse_unimodular().ok_or(LinalgError::NotUnimodular)?;
    let v_inv = s.v.inverse_unimodular().ok_or(LinalgError::NotUnimodular)?;
    let q = u_inv.mul(&v_inv.direct_sum(&IntMatrix::identity(n - r)));
    debug_assert_eq!(q.submatrix(0..n, 0..r), *pure_basis);
    Ok(q)
}
