//! Extremal points of finite subsets, and non-extremal sets as certificates
//! of non-diffuseness.

use std::collections::HashSet;

use crate::affine::{AffineElement, GroupSpec};
use crate::error::{Error, Result};
use crate::holonomy::{holonomy_closure, DEFAULT_MAX_ORDER};

pub const DEFAULT_BALL_CAP: usize = 200_000;

/// Finite set of group elements, without duplicates, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    dimension: usize,
    elements: Vec<AffineElement>,
    members: HashSet<AffineElement>,
}

impl ElementSet {
    /// Duplicates are dropped, keeping the first occurrence.
    pub fn new(dimension: usize, elements: impl IntoIterator<Item = AffineElement>) -> Result<Self> {
        let mut set = ElementSet { dimension, elements: Vec::new(), members: HashSet::new() };
        for e in elements {
            if e.dimension() != dimension {
                return Err(Error::DimensionMismatch(format!(
                    "element of dimension {} in a set of dimension {dimension}",
                    e.dimension()
                )));
            }
            set.insert(e);
        }
        Ok(set)
    }

    fn insert(&mut self, e: AffineElement) -> bool {
        if self.members.contains(&e) {
            return false;
        }
        self.members.insert(e.clone());
        self.elements.push(e);
        true
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn elements(&self) -> &[AffineElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &AffineElement) -> bool {
        self.members.contains(e)
    }

    fn retain(&self, keep: impl Fn(&AffineElement) -> bool) -> Self {
        let elements: Vec<_> = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        ElementSet { dimension: self.dimension, members: elements.iter().cloned().collect(), elements }
    }
}

/// Whether `a ∈ A` is extremal: no `g ≠ 1` has both `g·a` and `g⁻¹·a` in `A`.
///
/// `g·a ∈ A` forces `g = b·a⁻¹` for some `b ∈ A`, and then `g⁻¹·a = a·b⁻¹·a`.
pub fn is_extremal(set: &ElementSet, a: &AffineElement) -> bool {
    let a_inv = a.inverse();
    set.elements.iter().filter(|b| *b != a).all(|b| {
        let g = b.compose(&a_inv);
        !set.contains(&g.inverse().compose(a))
    })
}

pub fn extremal_points(set: &ElementSet) -> Result<ElementSet> {
    if set.is_empty() {
        return Err(Error::Precondition("extremal points of the empty set".into()));
    }
    let extremal: HashSet<&AffineElement> = set.elements.iter().filter(|a| is_extremal(set, a)).collect();
    Ok(set.retain(|e| extremal.contains(e)))
}

/// Checks that every element of `set` lies in the group generated by `spec`.
pub fn check_membership(spec: &GroupSpec, set: &ElementSet) -> Result<()> {
    if set.dimension() != spec.dimension() {
        return Err(Error::DimensionMismatch("set and group have different dimensions".into()));
    }
    let h = holonomy_closure(spec, DEFAULT_MAX_ORDER)?;
    for (i, e) in set.elements.iter().enumerate() {
        let member = h.index_of(e.linear()).is_some_and(|j| e.coset_equal(h.lift(j)));
        if !member {
            return Err(Error::NotAMember(i + 1));
        }
    }
    Ok(())
}

/// True iff `set` is a non-empty subset of the group without extremal points.
pub fn verify_no_extremal_certificate(spec: &GroupSpec, set: &ElementSet) -> Result<bool> {
    check_membership(spec, set)?;
    if set.is_empty() {
        return Ok(false);
    }
    Ok(extremal_points(set)?.is_empty())
}

/// Products of at most `radius` generators, inverses and signed lattice basis translations.
pub fn ball(spec: &GroupSpec, radius: usize, cap: usize) -> Result<ElementSet> {
    let steps = spec.symmetric_generators();
    let mut set = ElementSet::new(spec.dimension(), [AffineElement::identity(spec.dimension())])?;
    let mut frontier = set.elements.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            for s in &steps {
                let p = e.compose(s);
                if set.insert(p.clone()) {
                    if set.len() > cap {
                        return Err(Error::SizeGuard(cap));
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(set)
}

/// Removes extremal points until none are left or the set is empty.
pub fn peel(set: &ElementSet) -> ElementSet {
    let mut current = set.clone();
    while !current.is_empty() {
        let extremal = extremal_points(&current).expect("non-empty");
        if extremal.is_empty() {
            break;
        }
        current = current.retain(|e| !extremal.contains(e));
    }
    current
}
