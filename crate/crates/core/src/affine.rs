//! Affine maps `x ↦ A·x + a` with `A ∈ GL(n, Z)` and `a ∈ Q^n`, and groups
//! generated by finitely many of them together with the standard lattice.

use std::fmt;

use exact_linalg::{format_rational, BigInt, IntMatrix, RatMatrix, Rational};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    linear: IntMatrix,
    translation: Vec<Rational>,
}

impl AffineElement {
    pub fn new(linear: IntMatrix, translation: Vec<Rational>) -> Result<Self> {
        if !linear.is_square() || linear.rows() != translation.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} linear part with translation of length {}",
                linear.rows(),
                linear.cols(),
                translation.len()
            )));
        }
        if !linear.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(AffineElement { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineElement { linear: IntMatrix::identity(n), translation: vec![Rational::zero(); n] }
    }

    pub fn translation_by(v: Vec<Rational>) -> Self {
        AffineElement { linear: IntMatrix::identity(v.len()), translation: v }
    }

    /// Lattice translation by the `i`-th standard basis vector, with the given sign.
    pub fn lattice_basis(n: usize, i: usize, negative: bool) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = if negative { -Rational::one() } else { Rational::one() };
        Self::translation_by(v)
    }

    pub fn linear_only(linear: IntMatrix) -> Result<Self> {
        let n = linear.rows();
        Self::new(linear, vec![Rational::zero(); n])
    }

    /// Builds from an `(n+1)×(n+1)` affine matrix with last row `0 … 0 1`.
    pub fn from_affine_matrix(m: &RatMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::DimensionMismatch("affine matrix must be square and nonempty".into()));
        }
        let n = m.rows() - 1;
        for j in 0..=n {
            let expected = if j == n { Rational::one() } else { Rational::zero() };
            if m[(n, j)] != expected {
                return Err(Error::Invalid("last row of an affine matrix must be 0 ... 0 1".into()));
            }
        }
        let linear = m
            .submatrix(0..n, 0..n)
            .to_integer()
            .ok_or_else(|| Error::Invalid("linear part has non-integral entries".into()))?;
        Self::new(linear, m.column(n)[..n].to_vec())
    }

    pub fn to_affine_matrix(&self) -> RatMatrix {
        let n = self.dimension();
        RatMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => Rational::from_integer(self.linear[(i, j)].clone()),
            (true, false) => self.translation[i].clone(),
            (false, true) => Rational::zero(),
            (false, false) => Rational::one(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Zero::is_zero)
    }

    pub fn is_pure_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn has_integral_translation(&self) -> bool {
        self.translation.iter().all(|t| t.is_integer())
    }

    /// `self ∘ other`: linear `A·B`, translation `a + A·b`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dimension(), other.dimension(), "composing affine maps of different dimension");
        let moved = self.linear.to_rational().mul_vec(&other.translation);
        AffineElement {
            linear: self.linear.mul(&other.linear),
            translation: self.translation.iter().zip(moved).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "composing dimension {} with dimension {}",
                self.dimension(),
                other.dimension()
            )));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Self {
        let inv = self.linear.inverse_unimodular().expect("linear part is unimodular");
        let t = inv.to_rational().mul_vec(&self.translation);
        AffineElement { linear: inv, translation: t.into_iter().map(|x| -x).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.dimension());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `q⁻¹·self·q`, for an integral unimodular affine change of coordinates `q`.
    pub fn conjugate(&self, q: &Self) -> Result<Self> {
        if q.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch("conjugator has a different dimension".into()));
        }
        if !q.has_integral_translation() {
            return Err(Error::NotUnimodular);
        }
        Ok(q.inverse().compose(self).compose(q))
    }

    /// Same coset of the standard lattice: equal linear parts and integral translation difference.
    pub fn coset_equal(&self, other: &Self) -> bool {
        self.linear == other.linear
            && self.translation.iter().zip(&other.translation).all(|(a, b)| (a - b).is_integer())
    }

    /// Left multiplication by the lattice translation `v`.
    pub fn shifted(&self, v: &[BigInt]) -> Self {
        AffineElement {
            linear: self.linear.clone(),
            translation: self.translation.iter().zip(v).map(|(a, b)| a + Rational::from_integer(b.clone())).collect(),
        }
    }

    /// Block-diagonal sum with `other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut t = self.translation.clone();
        t.extend(other.translation.iter().cloned());
        AffineElement { linear: self.linear.direct_sum(&other.linear), translation: t }
    }

    /// Keeps the first `m` coordinates (top-left linear block and leading translation entries).
    pub(crate) fn truncate(&self, m: usize) -> Self {
        AffineElement { linear: self.linear.submatrix(0..m, 0..m), translation: self.translation[..m].to_vec() }
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dimension();
        for i in 0..n {
            let mut row: Vec<String> = self.linear.row(i).iter().map(|x| x.to_string()).collect();
            row.push(format_rational(&self.translation[i]));
            writeln!(f, "{}", row.join(" "))?;
        }
        let mut last = vec!["0".to_string(); n];
        last.push("1".into());
        writeln!(f, "{}", last.join(" "))
    }
}

/// A crystallographic group `⟨generators⟩·Z^n` in standard form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    dimension: usize,
    name: Option<String>,
    generators: Vec<AffineElement>,
}

impl GroupSpec {
    pub fn new(dimension: usize, name: Option<String>, generators: Vec<AffineElement>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dimension() != dimension) {
            return Err(Error::DimensionMismatch(format!(
                "generator of dimension {} in a group of dimension {dimension}",
                g.dimension()
            )));
        }
        Ok(GroupSpec { dimension, name, generators })
    }

    /// The lattice `Z^n` alone.
    pub fn free_abelian(n: usize) -> Self {
        GroupSpec { dimension: n, name: Some(format!("Z^{n}")), generators: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    /// All generators conjugated by `q` (`q⁻¹·g·q`); the lattice is preserved since `q` is unimodular.
    pub fn conjugated(&self, q: &AffineElement) -> Result<Self> {
        let generators = self.generators.iter().map(|g| g.conjugate(q)).collect::<Result<_>>()?;
        Ok(GroupSpec { dimension: self.dimension, name: self.name.clone(), generators })
    }

    /// `self × Z^m`, acting trivially on the extra coordinates.
    pub fn direct_sum_free(&self, m: usize) -> Self {
        let extra = AffineElement::identity(m);
        GroupSpec {
            dimension: self.dimension + m,
            name: self.name.as_ref().map(|n| format!("{n}+Z^{m}")),
            generators: self.generators.iter().map(|g| g.direct_sum(&extra)).collect(),
        }
    }

    /// Generators, their inverses, and the `2n` signed lattice translations.
    pub fn symmetric_generators(&self) -> Vec<AffineElement> {
        let mut out = Vec::new();
        for g in &self.generators {
            out.push(g.clone());
            out.push(g.inverse());
        }
        for i in 0..self.dimension {
            out.push(AffineElement::lattice_basis(self.dimension, i, false));
            out.push(AffineElement::lattice_basis(self.dimension, i, true));
        }
        out
    }
}

/// `det = ±1` check that also reports the value.
pub(crate) fn unimodular_defect(m: &IntMatrix) -> Option<BigInt> {
    let d = m.determinant();
    (!d.abs().is_one()).then_some(d)
}
