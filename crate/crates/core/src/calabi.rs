//! Calabi reduction: block coordinates, the epimorphism `f: Γ → Z^k` and its
//! kernel realized as an `(n-k)`-dimensional Bieberbach group.

use exact_linalg::{complete_basis, saturate, BigInt, IntMatrix, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::affine::{AffineElement, GroupSpec};
use crate::error::{Error, Result};
use crate::holonomy::{bieberbach_holonomy, holonomy_closure, HolonomyGroup, DEFAULT_MAX_ORDER};

#[derive(Clone, Debug)]
pub struct Reduction {
    /// Unimodular conjugator with zero translation.
    pub q: AffineElement,
    pub k: usize,
    /// The group in block coordinates, `q⁻¹·Γ·q`.
    pub conjugated: GroupSpec,
    pub kernel: GroupSpec,
    pub image_rank: usize,
}

/// Unimodular `Q` with `Q⁻¹hQ = [A B; 0 I_k]` for every `h`.
///
/// The first `n-k` columns are a basis of the saturation of `Σ im(g - I)`.
pub fn splitting_basis(h: &HolonomyGroup) -> Result<IntMatrix> {
    let n = h.dimension();
    let id = IntMatrix::identity(n);
    let mut vectors = Vec::new();
    for &g in h.generator_indices() {
        for col in h.element(g).sub(&id).columns() {
            if col.iter().any(|x| !x.is_zero()) {
                vectors.push(col);
            }
        }
    }
    let m = saturate(&vectors, n)?;
    let q = complete_basis(&m)?;
    let k = n - m.cols();
    if k != h.fixed_space_rank() {
        return Err(Error::Internal(format!(
            "moved lattice has corank {k}, fixed space has rank {}",
            h.fixed_space_rank()
        )));
    }
    let q_inv = q.inverse_unimodular().ok_or(Error::NotUnimodular)?;
    for e in h.elements() {
        if !in_block_form(&q_inv.mul(e).mul(&q), k) {
            return Err(Error::Internal("splitting basis does not block-triangularize the holonomy".into()));
        }
    }
    Ok(q)
}

/// Whether `m = [A B; 0 I_k]` exactly.
pub fn in_block_form(m: &IntMatrix, k: usize) -> bool {
    let n = m.rows();
    let split = n - k;
    (split..n).all(|i| {
        (0..n).all(|j| {
            let x = &m[(i, j)];
            if j == i {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    })
}

/// `f(g)`: the last `k` translation entries of an element in block coordinates.
pub fn calabi_map(g: &AffineElement, k: usize) -> Vec<Rational> {
    let n = g.dimension();
    g.translation()[n - k..].to_vec()
}

/// Builds the reduction of a Bieberbach group with `β₁ ≥ 1`.
pub fn kernel_group(spec: &GroupSpec) -> Result<Reduction> {
    let h = bieberbach_holonomy(spec)?;
    reduce_with(spec, &h)
}

/// As [`kernel_group`] for an already validated group and its holonomy.
pub fn reduce_with(spec: &GroupSpec, h: &HolonomyGroup) -> Result<Reduction> {
    let n = spec.dimension();
    let k = h.fixed_space_rank();
    if k == 0 {
        return Err(Error::Precondition("first Betti number is 0; there is no Calabi reduction".into()));
    }
    let q = AffineElement::linear_only(splitting_basis(h)?)?;
    let conjugated = spec.conjugated(&q)?;
    let hc = holonomy_closure(&conjugated, DEFAULT_MAX_ORDER)?;
    let m = n - k;

    let mut generators = Vec::new();
    let mut image_rows: Vec<Vec<Rational>> = Vec::new();
    for lift in hc.lifts() {
        let f = calabi_map(lift, k);
        if !in_block_form(lift.linear(), k) {
            return Err(Error::Internal("conjugated holonomy element is not in block form".into()));
        }
        if f.iter().all(Rational::is_integer) {
            if lift.linear().is_identity() {
                continue;
            }
            let mut shift = vec![BigInt::zero(); m];
            shift.extend(f.iter().map(|x| -x.to_integer()));
            let reduced = lift.shifted(&shift);
            debug_assert!(calabi_map(&reduced, k).iter().all(Zero::is_zero));
            generators.push(reduced.truncate(m));
        } else {
            image_rows.push(f);
        }
    }
    for i in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[i] = Rational::one();
        image_rows.push(e);
    }
    let image_rank = RatMatrix::from_rows(image_rows).map_err(Error::from)?.rank();

    let name = spec.name().map(|s| format!("{s}/ker"));
    let kernel = GroupSpec::new(m, name, generators)?;
    bieberbach_holonomy(&kernel).map_err(|e| Error::Internal(format!("Calabi kernel is not Bieberbach: {e}")))?;
    Ok(Reduction { q, k, conjugated, kernel, image_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn trivial_holonomy_basis_is_identity() {
        let h = holonomy_closure(&GroupSpec::free_abelian(3), 10).unwrap();
        assert!(splitting_basis(&h).unwrap().is_identity());
    }

    #[test]
    fn klein_bottle_basis_and_map() {
        let kb = fixtures::klein_bottle();
        let h = holonomy_closure(&kb, 10).unwrap();
        let q = splitting_basis(&h).unwrap();
        assert!(q[(0, 0)].is_zero());
        assert_eq!(q[(1, 0)].magnitude(), &1u32.into());
        let qa = AffineElement::linear_only(q).unwrap();
        let g = kb.generators()[0].conjugate(&qa).unwrap();
        assert_eq!(g.linear(), &IntMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]));
        assert_eq!(calabi_map(&g, 1), vec![r(1, 2)]);
    }

    #[test]
    fn klein_bottle_kernel_is_z() {
        let red = kernel_group(&fixtures::klein_bottle()).unwrap();
        assert_eq!(red.k, 1);
        assert_eq!(red.kernel.dimension(), 1);
        assert!(red.kernel.generators().is_empty());
        assert_eq!(red.image_rank, 1);
    }

    #[test]
    fn example_kernel_is_three_dimensional_with_trivial_center() {
        let red = kernel_group(&fixtures::example_05_01_06_006()).unwrap();
        assert_eq!(red.k, 1);
        assert_eq!(red.kernel.dimension(), 3);
        let hk = holonomy_closure(&red.kernel, 100).unwrap();
        assert_eq!(hk.fixed_space_rank(), 0);
        assert_eq!(hk.order(), 4);
    }

    #[test]
    fn example_generators_have_zero_image_under_reference_conjugator() {
        for g in fixtures::example_conjugated().generators() {
            assert!(in_block_form(g.linear(), 1));
            assert_eq!(calabi_map(g, 1), vec![r(0, 1)]);
        }
    }

    #[test]
    fn no_reduction_without_center() {
        assert!(matches!(kernel_group(&fixtures::hw_standard()), Err(Error::Precondition(_))));
    }

    #[test]
    fn free_abelian_reduces_to_point() {
        let red = kernel_group(&GroupSpec::free_abelian(2)).unwrap();
        assert_eq!(red.k, 2);
        assert_eq!(red.kernel.dimension(), 0);
    }
}
