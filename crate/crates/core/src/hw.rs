//! Detection of Hantzsche–Wendt subgroups `Δ_P = ⟨x, y | x⁻¹y²x = y⁻², y⁻¹x²y = x⁻²⟩`.
//!
//! Images of `x`, `y` are sought in cosets `lift(h₁)·Z^n`, `lift(h₂)·Z^n`
//! for holonomy pairs passing linear-level filters. With unknown offsets the
//! relators become an integer linear system in `(x, y) ∈ Z^{2n}`.

use exact_linalg::{solve_diophantine, BigInt, DioOutcome, Infeasibility, IntMatrix, RatMatrix, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::{AffineElement, GroupSpec};
use crate::error::{Error, Result};
use crate::holonomy::{bieberbach_holonomy, HolonomyGroup};

pub const DEFAULT_EXPLORE_BOUND: usize = 729;

pub use crate::fixtures::hw_standard;

/// Ordered pairs `(h₁, h₂)` of holonomy indices that could be the linear
/// parts of a generating pair of `Δ_P`.
pub fn candidate_pairs(h: &HolonomyGroup) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for h1 in 0..h.order() {
        let s1 = h.mul(h1, h1);
        for h2 in 0..h.order() {
            let s2 = h.mul(h2, h2);
            let r1 = h.mul(h.mul(h.inverse(h1), s2), h.mul(h1, s2));
            let r2 = h.mul(h.mul(h.inverse(h2), s1), h.mul(h2, s1));
            if r1 != 0 || r2 != 0 {
                continue;
            }
            let p = h.mul(h1, h2);
            let n = h.subgroup(&[s1, s2, h.mul(p, p)]);
            if !h.is_abelian(&n) {
                continue;
            }
            let s = h.subgroup(&[h1, h2]);
            if s.len() != 4 * n.len() || !s.iter().all(|&g| n.binary_search(&h.mul(g, g)).is_ok()) {
                continue;
            }
            out.push((h1, h2));
        }
    }
    out
}

/// Affine map whose translation is affine-linear in unknowns `z ∈ Z^{2n}`:
/// `x ↦ linear·x + coeff·z + constant`.
#[derive(Clone, Debug)]
struct Symbolic {
    linear: IntMatrix,
    coeff: IntMatrix,
    constant: Vec<Rational>,
}

impl Symbolic {
    fn offset(lift: &AffineElement, slot: usize) -> Self {
        let n = lift.dimension();
        let coeff = IntMatrix::from_fn(n, 2 * n, |i, j| if j == slot * n + i { BigInt::one() } else { BigInt::zero() });
        Symbolic { linear: lift.linear().clone(), coeff, constant: lift.translation().to_vec() }
    }

    fn compose(&self, other: &Self) -> Self {
        let mut constant = self.linear.to_rational().mul_vec(&other.constant);
        for (c, a) in constant.iter_mut().zip(&self.constant) {
            *c += a;
        }
        Symbolic {
            linear: self.linear.mul(&other.linear),
            coeff: self.coeff.add(&self.linear.mul(&other.coeff)),
            constant,
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.linear.inverse_unimodular().expect("unimodular");
        let constant = inv.to_rational().mul_vec(&self.constant).into_iter().map(|x| -x).collect();
        Symbolic { coeff: inv.mul(&self.coeff).neg(), linear: inv, constant }
    }
}

/// The two relators' translation parts, stacked: `coefficient·(x, y) + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorSystem {
    pub pair: (IntMatrix, IntMatrix),
    pub coefficient: IntMatrix,
    pub constant: Vec<Rational>,
}

impl RelatorSystem {
    /// Integer offsets making both relators trivial.
    pub fn solve(&self) -> Result<DioOutcome> {
        let rhs: Vec<Rational> = self.constant.iter().map(|c| -c).collect();
        Ok(solve_diophantine(&self.coefficient, &rhs)?)
    }

    /// Residual translation of both relators at `z`.
    pub fn evaluate(&self, z: &[BigInt]) -> Vec<Rational> {
        let lin = self.coefficient.mul_vec(z);
        lin.into_iter().zip(&self.constant).map(|(a, c)| Rational::from_integer(a) + c).collect()
    }

    /// The right-hand side the solver works with: `coefficient·z = -constant`.
    pub fn rhs(&self) -> Vec<Rational> {
        self.constant.iter().map(|c| -c).collect()
    }
}

/// Relator system for `α = t_x·lift₁`, `β = t_y·lift₂`.
pub fn build_relator_system(lift1: &AffineElement, lift2: &AffineElement) -> Result<RelatorSystem> {
    if lift1.dimension() != lift2.dimension() {
        return Err(Error::DimensionMismatch("lifts of different dimensions".into()));
    }
    let a = Symbolic::offset(lift1, 0);
    let b = Symbolic::offset(lift2, 1);
    let (ai, bi) = (a.inverse(), b.inverse());
    let (a2, b2) = (a.compose(&a), b.compose(&b));
    let r1 = ai.compose(&b2).compose(&a).compose(&b2);
    let r2 = bi.compose(&a2).compose(&b).compose(&a2);
    if !r1.linear.is_identity() || !r2.linear.is_identity() {
        return Err(Error::Precondition("relator linear parts are not the identity".into()));
    }
    let mut constant = r1.constant;
    constant.extend(r2.constant);
    Ok(RelatorSystem {
        pair: (lift1.linear().clone(), lift2.linear().clone()),
        coefficient: r1.coeff.vstack(&r2.coeff)?,
        constant,
    })
}

fn relators(alpha: &AffineElement, beta: &AffineElement) -> (AffineElement, AffineElement) {
    let (a2, b2) = (alpha.pow(2), beta.pow(2));
    let r1 = alpha.inverse().compose(&b2).compose(alpha).compose(&b2);
    let r2 = beta.inverse().compose(&a2).compose(beta).compose(&a2);
    (r1, r2)
}

/// Itemized check of a candidate embedding `x ↦ α`, `y ↦ β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub relators_trivial: bool,
    /// The nine relations among `a = α²`, `b = β²`, `c = (αβ)²`, by name.
    pub relations: Vec<(&'static str, bool)>,
    /// Rank of the translation lattice spanned by `a^e, b^e, c^e`.
    pub rank: usize,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.relators_trivial && self.relations.iter().all(|r| r.1) && self.rank == 3
    }
}

pub fn embedding_report(alpha: &AffineElement, beta: &AffineElement) -> EmbeddingReport {
    let (r1, r2) = relators(alpha, beta);
    let gamma = alpha.compose(beta);
    let (a, b, c) = (alpha.pow(2), beta.pow(2), gamma.pow(2));
    let commutes = |p: &AffineElement, q: &AffineElement| p.compose(q) == q.compose(p);
    let inverts = |p: &AffineElement, by: &AffineElement| by.inverse().compose(p).compose(by) == p.inverse();
    let relations = vec![
        ("[a,b]=1", commutes(&a, &b)),
        ("[a,c]=1", commutes(&a, &c)),
        ("[b,c]=1", commutes(&b, &c)),
        ("a^beta=a^-1", inverts(&a, beta)),
        ("a^gamma=a^-1", inverts(&a, &gamma)),
        ("b^alpha=b^-1", inverts(&b, alpha)),
        ("b^gamma=b^-1", inverts(&b, &gamma)),
        ("c^alpha=c^-1", inverts(&c, alpha)),
        ("c^beta=c^-1", inverts(&c, beta)),
    ];
    let orders: Vec<usize> = [&a, &b, &c].iter().filter_map(|g| g.linear().order(1024)).collect();
    let rank = if orders.len() == 3 {
        let e = orders.iter().fold(1usize, |acc, o| acc.lcm(o)) as i64;
        let rows: Vec<Vec<Rational>> = [&a, &b, &c].iter().map(|g| g.pow(e).translation().to_vec()).collect();
        RatMatrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
    } else {
        0
    };
    EmbeddingReport { relators_trivial: r1.is_identity() && r2.is_identity(), relations, rank }
}

/// Whether `x ↦ α`, `y ↦ β` defines an injective homomorphism `Δ_P → Γ`.
pub fn verify_embedding(alpha: &AffineElement, beta: &AffineElement) -> bool {
    alpha.dimension() == beta.dimension() && embedding_report(alpha, beta).holds()
}

/// A candidate pair whose relator system has no integer solution.
#[derive(Clone, Debug)]
pub struct InfeasibleSystem {
    pub pair: (usize, usize),
    pub system: RelatorSystem,
    pub witness: Infeasibility,
}

#[derive(Clone, Debug)]
pub enum HwOutcome {
    Contained { alpha: AffineElement, beta: AffineElement, pair: (usize, usize) },
    NotContained { systems: Vec<InfeasibleSystem> },
    Undetermined { feasible_but_unverified: usize },
}

#[derive(Clone, Debug)]
pub struct HwReport {
    pub outcome: HwOutcome,
    pub candidate_pairs: usize,
}

impl HwReport {
    pub fn label(&self) -> &'static str {
        match self.outcome {
            HwOutcome::Contained { .. } => "contained",
            HwOutcome::NotContained { .. } => "not-contained",
            HwOutcome::Undetermined { .. } => "undetermined",
        }
    }
}

/// Offsets `{-1, 0, 1}` per homogeneous basis vector, all zeros first.
fn offset_digits(len: usize, limit: usize) -> impl Iterator<Item = Vec<BigInt>> {
    let total = 3usize.checked_pow(len as u32).unwrap_or(usize::MAX).min(limit);
    (0..total).map(move |mut t| {
        (0..len)
            .map(|_| {
                let d = t % 3;
                t /= 3;
                BigInt::from([0, 1, -1][d])
            })
            .collect()
    })
}

/// Searches for a subgroup isomorphic to `Δ_P`.
pub fn hw_search(spec: &GroupSpec, explore_bound: usize) -> Result<HwReport> {
    let h = bieberbach_holonomy(spec)?;
    let pairs = candidate_pairs(&h);
    let n = spec.dimension();
    let mut infeasible = Vec::new();
    let mut unverified = 0;
    for &(i, j) in &pairs {
        let (l1, l2) = (h.lift(i), h.lift(j));
        let system = build_relator_system(l1, l2)?;
        match system.solve()? {
            DioOutcome::Infeasible(witness) => infeasible.push(InfeasibleSystem { pair: (i, j), system, witness }),
            DioOutcome::Feasible(sol) => {
                let found = offset_digits(sol.homogeneous_basis.len(), explore_bound.max(1)).find_map(|c| {
                    let z = sol.instantiate(&c);
                    let alpha = l1.shifted(&z[..n]);
                    let beta = l2.shifted(&z[n..]);
                    verify_embedding(&alpha, &beta).then_some((alpha, beta))
                });
                match found {
                    Some((alpha, beta)) => {
                        let outcome = HwOutcome::Contained { alpha, beta, pair: (i, j) };
                        return Ok(HwReport { outcome, candidate_pairs: pairs.len() });
                    }
                    None => unverified += 1,
                }
            }
        }
    }
    let outcome = if unverified > 0 {
        HwOutcome::Undetermined { feasible_but_unverified: unverified }
    } else {
        HwOutcome::NotContained { systems: infeasible }
    };
    Ok(HwReport { outcome, candidate_pairs: pairs.len() })
}
