//! Trivial center means non-diffuse; otherwise reduce along the Calabi map
//! and decide the kernel.

use std::fmt;

use serde::Serialize;

use crate::affine::GroupSpec;
use crate::analysis::{is_solvable, sylow_all_cyclic};
use crate::calabi::{reduce_with, Reduction};
use crate::error::{Error, Result};
use crate::holonomy::{bieberbach_holonomy, HolonomyGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Diffuse,
    NonDiffuse,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Diffuse => "diffuse",
            Outcome::NonDiffuse => "non-diffuse",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Action {
    TrivialCenter,
    CalabiReduce,
    TrivialGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub dimension: usize,
    pub betti: usize,
    pub action: Action,
}

impl Step {
    pub fn new(dimension: usize, betti: usize, action: Action) -> Self {
        Step { dimension, betti, action }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{:?}", self.dimension, self.betti, self.action)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CertificateChain {
    pub steps: Vec<Step>,
}

impl CertificateChain {
    /// Outcome implied by the last step, if the chain is well formed.
    pub fn outcome(&self) -> Option<Outcome> {
        if !self.is_well_formed() {
            return None;
        }
        match self.steps.last()?.action {
            Action::TrivialCenter => Some(Outcome::NonDiffuse),
            Action::TrivialGroup => Some(Outcome::Diffuse),
            Action::CalabiReduce => None,
        }
    }

    /// Only the last step terminates; each reduction lowers the dimension by its `k ≥ 1`.
    pub fn is_well_formed(&self) -> bool {
        let Some((last, init)) = self.steps.split_last() else { return false };
        let terminal_ok = match last.action {
            Action::TrivialCenter => last.betti == 0 && last.dimension > 0,
            Action::TrivialGroup => last.betti == last.dimension,
            Action::CalabiReduce => false,
        };
        terminal_ok
            && init.iter().all(|s| s.action == Action::CalabiReduce && s.betti >= 1 && s.betti < s.dimension)
            && self.steps.windows(2).all(|w| w[1].dimension == w[0].dimension - w[0].betti)
    }

    /// Recomputes every step from `spec`, measuring `k` through the coinvariants.
    pub fn replay(&self, spec: &GroupSpec) -> Result<bool> {
        let mut current = spec.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let h = bieberbach_holonomy(&current)?;
            let k = h.coinvariant_rank();
            if current.dimension() != step.dimension || k != step.betti {
                return Ok(false);
            }
            let last = i + 1 == self.steps.len();
            match step.action {
                Action::TrivialCenter => return Ok(last && k == 0),
                Action::TrivialGroup => return Ok(last && k == current.dimension()),
                Action::CalabiReduce => {
                    if last || k == 0 {
                        return Ok(false);
                    }
                    current = reduce_with(&current, &h)?.kernel;
                }
            }
        }
        Ok(false)
    }
}

impl fmt::Display for CertificateChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub chain: CertificateChain,
    /// The reductions performed, one per `CalabiReduce` step.
    pub reductions: Vec<Reduction>,
}

/// Decides diffuseness of a Bieberbach group.
pub fn decide(spec: &GroupSpec) -> Result<Verdict> {
    let mut current = spec.clone();
    let mut chain = CertificateChain::default();
    let mut reductions = Vec::new();
    loop {
        let n = current.dimension();
        if n == 0 {
            chain.steps.push(Step::new(0, 0, Action::TrivialGroup));
            return Ok(Verdict { outcome: Outcome::Diffuse, chain, reductions });
        }
        let h = bieberbach_holonomy(&current)?;
        let k = h.fixed_space_rank();
        if k == 0 {
            chain.steps.push(Step::new(n, 0, Action::TrivialCenter));
            return Ok(Verdict { outcome: Outcome::NonDiffuse, chain, reductions });
        }
        if k == n {
            chain.steps.push(Step::new(n, n, Action::TrivialGroup));
            return Ok(Verdict { outcome: Outcome::Diffuse, chain, reductions });
        }
        chain.steps.push(Step::new(n, k, Action::CalabiReduce));
        let reduction = reduce_with(&current, &h)?;
        if reduction.kernel.dimension() != n - k {
            return Err(Error::Internal("kernel has the wrong dimension".into()));
        }
        current = reduction.kernel.clone();
        reductions.push(reduction);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shortcut {
    Diffuse,
    NonDiffuse,
    Inconclusive,
}

/// Verdict implied by the holonomy group alone, when there is one.
pub fn shortcut_verdict(h: &HolonomyGroup) -> Shortcut {
    if !is_solvable(h) {
        Shortcut::NonDiffuse
    } else if sylow_all_cyclic(h) {
        Shortcut::Diffuse
    } else {
        Shortcut::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::holonomy::holonomy_closure;

    fn steps(v: &[(usize, usize, Action)]) -> CertificateChain {
        CertificateChain { steps: v.iter().map(|&(d, k, a)| Step::new(d, k, a)).collect() }
    }

    #[test]
    fn free_abelian() {
        let v = decide(&GroupSpec::free_abelian(3)).unwrap();
        assert_eq!(v.outcome, Outcome::Diffuse);
        assert_eq!(v.chain, steps(&[(3, 3, Action::TrivialGroup)]));
        let v = decide(&GroupSpec::free_abelian(0)).unwrap();
        assert_eq!(v.chain.to_string(), "0:0:TrivialGroup");
    }

    #[test]
    fn hantzsche_wendt() {
        let v = decide(&fixtures::hw_standard()).unwrap();
        assert_eq!(v.outcome, Outcome::NonDiffuse);
        assert_eq!(v.chain.to_string(), "3:0:TrivialCenter");
    }

    #[test]
    fn min88() {
        let v = decide(&fixtures::min88()).unwrap();
        assert_eq!(v.outcome, Outcome::NonDiffuse);
        assert_eq!(v.chain, steps(&[(5, 0, Action::TrivialCenter)]));
    }

    #[test]
    fn example_chain() {
        let spec = fixtures::example_05_01_06_006();
        let v = decide(&spec).unwrap();
        assert_eq!(v.outcome, Outcome::NonDiffuse);
        assert_eq!(v.chain, steps(&[(4, 1, Action::CalabiReduce), (3, 0, Action::TrivialCenter)]));
        assert_eq!(v.reductions.len(), 1);
        assert!(v.chain.replay(&spec).unwrap());
        assert_eq!(v.chain.outcome(), Some(Outcome::NonDiffuse));
    }

    #[test]
    fn klein_bottle_is_diffuse() {
        let spec = fixtures::klein_bottle();
        let v = decide(&spec).unwrap();
        assert_eq!(v.outcome, Outcome::Diffuse);
        assert_eq!(v.chain.to_string(), "2:1:CalabiReduce;1:1:TrivialGroup");
        assert!(v.chain.replay(&spec).unwrap());
    }

    #[test]
    fn invalid_input() {
        assert!(matches!(decide(&fixtures::infinite_dihedral()), Err(Error::Invalid(_))));
    }

    #[test]
    fn malformed_chains() {
        assert!(!CertificateChain::default().is_well_formed());
        assert!(!steps(&[(3, 1, Action::CalabiReduce)]).is_well_formed());
        assert!(!steps(&[(4, 1, Action::CalabiReduce), (2, 0, Action::TrivialCenter)]).is_well_formed());
        assert!(!steps(&[(3, 0, Action::TrivialCenter), (3, 0, Action::TrivialCenter)]).is_well_formed());
        let hw = fixtures::hw_standard();
        assert!(!steps(&[(3, 3, Action::TrivialGroup)]).replay(&hw).unwrap());
    }

    #[test]
    fn shortcuts() {
        let k4 = holonomy_closure(&fixtures::hw_standard(), 10).unwrap();
        assert_eq!(shortcut_verdict(&k4), Shortcut::Inconclusive);
        let kb = holonomy_closure(&fixtures::klein_bottle(), 10).unwrap();
        assert_eq!(shortcut_verdict(&kb), Shortcut::Diffuse);
    }
}
