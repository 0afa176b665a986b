//! Deciding diffuseness of Bieberbach groups.
//!
//! A Bieberbach group is given in standard form: finitely many affine maps
//! `x ↦ A·x + a` (`A ∈ GL(n, Z)`, `a ∈ Q^n`) together with the lattice `Z^n`.
//! A group with trivial center is never diffuse; otherwise the Calabi map onto
//! `Z^k` (`k = β₁`) has a lower-dimensional Bieberbach kernel that decides the
//! question, which gives a terminating recursion ([`decide`]).

pub mod affine;
pub mod ags;
pub mod analysis;
pub mod calabi;
pub mod catalog;
pub mod decider;
pub mod error;
pub mod fixtures;
pub mod holonomy;
pub mod hw;
pub mod witness;

pub use affine::{AffineElement, GroupSpec};
pub use analysis::{is_solvable, sylow_all_cyclic};
pub use calabi::{calabi_map, kernel_group, splitting_basis, Reduction};
pub use decider::{decide, shortcut_verdict, Action, CertificateChain, Outcome, Shortcut, Step, Verdict};
pub use error::{Error, Result};
pub use holonomy::{fixed_space_rank, holonomy_closure, is_torsion_free, validate, HolonomyGroup, ValidationReport};
pub use hw::{build_relator_system, candidate_pairs, hw_search, hw_standard, verify_embedding, HwOutcome, HwReport};
pub use witness::{ball, extremal_points, peel, verify_no_extremal_certificate, ElementSet};
