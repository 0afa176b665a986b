//! The point group `p(Γ) ⊂ GL(n, Z)` of a group in standard form, with a
//! chosen preimage ("lift") for every element, and the validation built on it.

use std::collections::{HashMap, VecDeque};

use exact_linalg::{solve_diophantine, DioOutcome, IntMatrix, RatMatrix, Rational};
use serde::Serialize;

use crate::affine::{unimodular_defect, AffineElement, GroupSpec};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 50_000;

/// Finite group of linear parts; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct HolonomyGroup {
    dimension: usize,
    elements: Vec<IntMatrix>,
    lifts: Vec<AffineElement>,
    index: HashMap<IntMatrix, usize>,
    generators: Vec<usize>,
}

impl HolonomyGroup {
    /// Closes the linear parts of `spec`'s generators under multiplication,
    /// breadth first, recording the first word found for each element as its lift.
    pub fn closure(spec: &GroupSpec, max_order: usize) -> Result<Self> {
        Self::close(spec.dimension(), spec.generators(), max_order)
    }

    /// Group generated by bare matrices; lifts carry zero translation.
    pub fn from_linear_generators(dimension: usize, gens: &[IntMatrix], max_order: usize) -> Result<Self> {
        let lifted = gens.iter().cloned().map(AffineElement::linear_only).collect::<Result<Vec<_>>>()?;
        if let Some(g) = lifted.iter().find(|g| g.dimension() != dimension) {
            return Err(Error::DimensionMismatch(format!("generator of dimension {}", g.dimension())));
        }
        Self::close(dimension, &lifted, max_order)
    }

    fn close(dimension: usize, gens: &[AffineElement], max_order: usize) -> Result<Self> {
        let mut group = HolonomyGroup {
            dimension,
            elements: Vec::new(),
            lifts: Vec::new(),
            index: HashMap::new(),
            generators: Vec::new(),
        };
        group.insert(AffineElement::identity(dimension));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let product = group.lifts[i].compose(g);
                if !group.index.contains_key(product.linear()) {
                    if group.elements.len() >= max_order {
                        return Err(Error::HolonomyNotFinite(max_order));
                    }
                    queue.push_back(group.insert(product));
                }
            }
        }
        group.generators = gens.iter().map(|g| group.index[g.linear()]).collect();
        Ok(group)
    }

    fn insert(&mut self, lift: AffineElement) -> usize {
        let i = self.elements.len();
        self.elements.push(lift.linear().clone());
        self.index.insert(lift.linear().clone(), i);
        self.lifts.push(lift);
        i
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn lift(&self, i: usize) -> &AffineElement {
        &self.lifts[i]
    }

    pub fn lifts(&self) -> &[AffineElement] {
        &self.lifts
    }

    /// Indices of the generators' linear parts.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let mut p = i;
        loop {
            let next = self.mul(p, i);
            if next == 0 {
                return p;
            }
            p = next;
        }
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut p = i;
        let mut k = 1;
        while p != 0 {
            p = self.mul(p, i);
            k += 1;
        }
        k
    }

    /// Sorted indices of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(i, g);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn is_abelian(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| members.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Stacked `(h - I)` over the given elements.
    fn stacked_deviation(&self, members: impl Iterator<Item = usize>) -> RatMatrix {
        let n = self.dimension;
        let id = IntMatrix::identity(n);
        let mut rows = Vec::new();
        for i in members {
            rows.extend(self.elements[i].sub(&id).to_rational().to_rows());
        }
        if rows.is_empty() {
            return RatMatrix::zeros(0, n);
        }
        RatMatrix::from_rows(rows).expect("square deviations")
    }

    /// Basis of the subspace fixed by every element.
    pub fn fixed_space_basis(&self) -> Vec<Vec<Rational>> {
        if self.dimension == 0 {
            return Vec::new();
        }
        let stacked = self.stacked_deviation(0..self.order());
        if stacked.rows() == 0 {
            return RatMatrix::identity(self.dimension).columns();
        }
        stacked.kernel()
    }

    /// Dimension of the fixed space; for a Bieberbach group this is `β₁`.
    pub fn fixed_space_rank(&self) -> usize {
        self.fixed_space_basis().len()
    }

    /// Corank of `[(g₁ - I); (g₂ - I); …]` over the generators only.
    pub fn fixed_space_rank_of_generators(&self) -> usize {
        let stacked = self.stacked_deviation(self.generators.iter().copied());
        self.dimension - if stacked.rows() == 0 { 0 } else { stacked.rank() }
    }

    /// Dimension of the rational coinvariants `Q^n / Σ im(g - I)` over the generators.
    pub fn coinvariant_rank(&self) -> usize {
        let n = self.dimension;
        let id = IntMatrix::identity(n);
        let blocks: Vec<RatMatrix> = self.generators.iter().map(|&g| self.elements[g].sub(&id).to_rational()).collect();
        let Some(first) = blocks.first() else { return n };
        let wide = blocks[1..].iter().fold(first.clone(), |acc, b| acc.hstack(b).expect("equal heights"));
        n - wide.rank()
    }
}

pub fn holonomy_closure(spec: &GroupSpec, max_order: usize) -> Result<HolonomyGroup> {
    HolonomyGroup::closure(spec, max_order)
}

pub fn fixed_space_rank(h: &HolonomyGroup) -> usize {
    h.fixed_space_rank()
}

/// Element of the coset `lift(i)·Z^n` of finite order, if one exists.
///
/// `(h, a + l)^m = (I, N·(a + l))` with `N = Σ_{k<m} h^k`, so a torsion
/// element exists iff `N·l = -N·a` has an integer solution.
pub fn torsion_in_coset(h: &HolonomyGroup, i: usize) -> Result<Option<AffineElement>> {
    if i == 0 {
        return Ok(Some(AffineElement::identity(h.dimension())));
    }
    let lift = h.lift(i);
    let m = h.element_order(i);
    let n = h.dimension();
    let mut norm = IntMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for _ in 0..m {
        norm = norm.add(&power);
        power = power.mul(lift.linear());
    }
    let rhs: Vec<Rational> = norm.to_rational().mul_vec(lift.translation()).into_iter().map(|x| -x).collect();
    Ok(match solve_diophantine(&norm, &rhs)? {
        DioOutcome::Feasible(sol) => Some(lift.shifted(&sol.particular)),
        DioOutcome::Infeasible(_) => None,
    })
}

pub fn is_torsion_free(_spec: &GroupSpec, h: &HolonomyGroup) -> Result<bool> {
    for i in 1..h.order() {
        if torsion_in_coset(h, i)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reasons the translation subgroup of `spec` is larger than `Z^n`.
///
/// The cosets `lift(h)·Z^n` must be permuted by right multiplication with the
/// generators; any mismatch means some product of generators is a
/// non-integral pure translation.
pub fn lattice_defects(spec: &GroupSpec, h: &HolonomyGroup) -> Vec<String> {
    let mut out = Vec::new();
    for (gi, g) in spec.generators().iter().enumerate() {
        for i in 0..h.order() {
            let product = h.lift(i).compose(g);
            let j = h.index_of(product.linear()).expect("closed under generators");
            if !product.coset_equal(h.lift(j)) {
                let diff: Vec<String> = product
                    .translation()
                    .iter()
                    .zip(h.lift(j).translation())
                    .map(|(a, b)| exact_linalg::format_rational(&(a - b)))
                    .collect();
                out.push(format!(
                    "generator {} produces the non-lattice pure translation ({})",
                    gi + 1,
                    diff.join(", ")
                ));
                return out;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub holonomy_finite: bool,
    pub holonomy_order: usize,
    pub lattice_standard: bool,
    pub torsion_free: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_bieberbach(&self) -> bool {
        self.holonomy_finite && self.lattice_standard && self.torsion_free && self.failures.is_empty()
    }
}

pub fn validate(spec: &GroupSpec) -> ValidationReport {
    validate_with_bound(spec, DEFAULT_MAX_ORDER).0
}

/// Validation plus the holonomy group when it could be computed.
pub fn validate_with_bound(spec: &GroupSpec, max_order: usize) -> (ValidationReport, Option<HolonomyGroup>) {
    let mut report = ValidationReport {
        holonomy_finite: false,
        holonomy_order: 0,
        lattice_standard: false,
        torsion_free: false,
        failures: Vec::new(),
    };
    for (i, g) in spec.generators().iter().enumerate() {
        if g.dimension() != spec.dimension() {
            report.failures.push(format!("generator {} has dimension {}", i + 1, g.dimension()));
        } else if let Some(d) = unimodular_defect(g.linear()) {
            report.failures.push(format!("generator {} has linear part of determinant {d}", i + 1));
        }
    }
    if !report.failures.is_empty() {
        return (report, None);
    }
    let h = match HolonomyGroup::closure(spec, max_order) {
        Ok(h) => h,
        Err(e) => {
            report.failures.push(e.to_string());
            return (report, None);
        }
    };
    report.holonomy_finite = true;
    report.holonomy_order = h.order();
    let defects = lattice_defects(spec, &h);
    report.lattice_standard = defects.is_empty();
    report.failures.extend(defects);
    if report.lattice_standard {
        for i in 1..h.order() {
            match torsion_in_coset(&h, i) {
                Ok(None) => {}
                Ok(Some(t)) => {
                    report.failures.push(format!(
                        "not torsion-free: element of order {} with translation ({})",
                        h.element_order(i),
                        t.translation().iter().map(exact_linalg::format_rational).collect::<Vec<_>>().join(", ")
                    ));
                    break;
                }
                Err(e) => {
                    report.failures.push(e.to_string());
                    break;
                }
            }
        }
        report.torsion_free = report.failures.is_empty();
    }
    (report, Some(h))
}

/// Holonomy of a group that must be Bieberbach; errors carry the validation failures.
pub fn bieberbach_holonomy(spec: &GroupSpec) -> Result<HolonomyGroup> {
    let (report, h) = validate_with_bound(spec, DEFAULT_MAX_ORDER);
    match h {
        Some(h) if report.is_bieberbach() => Ok(h),
        _ => Err(Error::Invalid(report.failures.join("; "))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_holonomy() {
        let h = holonomy_closure(&GroupSpec::free_abelian(3), 10).unwrap();
        assert_eq!(h.order(), 1);
        assert_eq!(h.fixed_space_rank(), 3);
        assert!(h.lift(0).is_identity());
    }

    #[test]
    fn hw_closure_is_klein_four() {
        let h = holonomy_closure(&fixtures::hw_standard(), 100).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_abelian(&(0..4).collect::<Vec<_>>()));
        assert!((1..4).all(|i| h.element_order(i) == 2));
        assert_eq!(h.fixed_space_rank(), 0);
    }

    #[test]
    fn min88_closure_is_dihedral() {
        let h = holonomy_closure(&fixtures::min88(), 100).unwrap();
        assert_eq!(h.order(), 8);
        assert!(!h.is_abelian(&(0..8).collect::<Vec<_>>()));
        assert_eq!((0..8).map(|i| h.element_order(i)).max(), Some(4));
        assert_eq!(h.fixed_space_rank(), 0);
    }

    #[test]
    fn example_betti_is_one() {
        let h = holonomy_closure(&fixtures::example_05_01_06_006(), 100).unwrap();
        assert_eq!(h.fixed_space_rank(), 1);
    }

    #[test]
    fn closure_bound() {
        let shear = AffineElement::linear_only(IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]])).unwrap();
        let spec = GroupSpec::new(2, None, vec![shear]).unwrap();
        assert_eq!(holonomy_closure(&spec, 50).unwrap_err(), Error::HolonomyNotFinite(50));
    }

    #[test]
    fn lifts_match_elements() {
        let h = holonomy_closure(&fixtures::min88(), 100).unwrap();
        for i in 0..h.order() {
            assert_eq!(h.lift(i).linear(), h.element(i));
            assert_eq!(h.order() % h.element_order(i), 0);
        }
    }

    #[test]
    fn torsion_cases() {
        let dihedral = fixtures::infinite_dihedral();
        let h = holonomy_closure(&dihedral, 10).unwrap();
        assert!(!is_torsion_free(&dihedral, &h).unwrap());
        let kb = fixtures::klein_bottle();
        let h = holonomy_closure(&kb, 10).unwrap();
        assert!(is_torsion_free(&kb, &h).unwrap());
        let hw = fixtures::hw_standard();
        let h = holonomy_closure(&hw, 10).unwrap();
        assert!(is_torsion_free(&hw, &h).unwrap());
    }

    #[test]
    fn validate_fixtures() {
        let r = validate(&fixtures::hw_standard());
        assert!(r.is_bieberbach());
        assert_eq!(r.holonomy_order, 4);
        let r = validate(&fixtures::infinite_dihedral());
        assert!(!r.is_bieberbach() && !r.torsion_free);
        let r = validate(&fixtures::min88());
        assert!(r.is_bieberbach());
        assert_eq!(r.holonomy_order, 8);
    }

    #[test]
    fn validate_rejects_fractional_lattice() {
        let half = AffineElement::translation_by(vec![Rational::new(1.into(), 2.into())]);
        let r = validate(&GroupSpec::new(1, None, vec![half]).unwrap());
        assert!(!r.lattice_standard);
        assert!(!r.is_bieberbach());
    }
}
