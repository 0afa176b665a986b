//! Finite-group predicates on the holonomy group.

use crate::holonomy::HolonomyGroup;

/// Prime factorization of `n` as `(p, a)` pairs, ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Subgroup generated by all commutators `[a, b]`, `a, b ∈ members`.
pub fn derived_subgroup(h: &HolonomyGroup, members: &[usize]) -> Vec<usize> {
    let mut commutators = Vec::new();
    for &a in members {
        let ai = h.inverse(a);
        for &b in members {
            let c = h.mul(h.mul(ai, h.inverse(b)), h.mul(a, b));
            if c != 0 && !commutators.contains(&c) {
                commutators.push(c);
            }
        }
    }
    h.subgroup(&commutators)
}

/// Whether the derived series reaches the trivial group.
pub fn is_solvable(h: &HolonomyGroup) -> bool {
    let mut current: Vec<usize> = (0..h.order()).collect();
    while current.len() > 1 {
        let next = derived_subgroup(h, &current);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
    true
}

/// Whether every Sylow subgroup is cyclic, tested through element orders:
/// for each `p^a ‖ |H|` some element has order exactly `p^a`.
pub fn sylow_all_cyclic(h: &HolonomyGroup) -> bool {
    let orders: Vec<usize> = (0..h.order()).map(|i| h.element_order(i)).collect();
    factorize(h.order()).into_iter().all(|(p, a)| {
        let pa = p.pow(a);
        orders.contains(&pa)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::holonomy::holonomy_closure;
    use exact_linalg::IntMatrix;

    fn permutation(images: &[usize]) -> IntMatrix {
        let n = images.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, &j) in images.iter().enumerate() {
            rows[j][i] = 1;
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        IntMatrix::from_i64_rows(&refs)
    }

    fn a5() -> HolonomyGroup {
        let gens = [permutation(&[1, 2, 0, 3, 4]), permutation(&[0, 1, 3, 4, 2]), permutation(&[1, 0, 3, 2, 4])];
        HolonomyGroup::from_linear_generators(5, &gens, 1000).unwrap()
    }

    fn c6() -> HolonomyGroup {
        HolonomyGroup::from_linear_generators(2, &[IntMatrix::from_i64_rows(&[&[0, -1], &[1, 1]])], 100).unwrap()
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn a5_is_perfect() {
        let h = a5();
        assert_eq!(h.order(), 60);
        assert!(!is_solvable(&h));
        assert!(!sylow_all_cyclic(&h));
    }

    #[test]
    fn c6_sylow_cyclic() {
        let h = c6();
        assert_eq!(h.order(), 6);
        assert!(is_solvable(&h));
        assert!(sylow_all_cyclic(&h));
    }

    #[test]
    fn klein_four_and_dihedral() {
        let k4 = holonomy_closure(&fixtures::hw_standard(), 100).unwrap();
        assert!(is_solvable(&k4));
        assert!(!sylow_all_cyclic(&k4));
        let d8 = holonomy_closure(&fixtures::min88(), 100).unwrap();
        assert!(is_solvable(&d8));
        assert!(!sylow_all_cyclic(&d8));
        assert_eq!(derived_subgroup(&d8, &(0..8).collect::<Vec<_>>()).len(), 2);
    }

    #[test]
    fn trivial_group() {
        let h = holonomy_closure(&crate::affine::GroupSpec::free_abelian(2), 10).unwrap();
        assert!(is_solvable(&h) && sylow_all_cyclic(&h));
    }
}
