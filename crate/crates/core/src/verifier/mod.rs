//! Named, seeded identity checks. Every check builds both sides of an
//! identity, probes them on the generator family, and passes only when every
//! residual is the zero polynomial.

mod identities;
mod matrix_checks;
mod report;
mod setup;

use std::time::Instant;

use rayon::prelude::*;

use crate::chart::ChartSpec;
use crate::{Error, Result};

pub use report::{Failure, IdentityReport, Status, Summary};
pub use setup::Seeds;

use setup::{Outcome, Setup};

enum Runner {
    Forms(fn(&Setup) -> Result<Outcome>),
    Matrix(fn(u64) -> Result<Outcome>),
}

/// One entry of the closed identity registry.
pub struct IdentityInfo {
    pub id: &'static str,
    pub summary: &'static str,
    runner: Runner,
}

pub const REGISTRY: &[IdentityInfo] = &[
    IdentityInfo {
        id: "T3.8.1",
        summary: "e^{-i_φ} ∇ e^{i_φ} = ∇ - 𝓛_φ - ½ i_[φ,φ] - ⅙ i_[[φ,φ],φ]^∧",
        runner: Runner::Forms(identities::conjugated_nabla),
    },
    IdentityInfo {
        id: "T3.8.2",
        summary: "conjugation of ∇^(1,0) and ∇^(0,1) by e^{i_φ}",
        runner: Runner::Forms(identities::conjugated_nabla_parts),
    },
    IdentityInfo {
        id: "T3.8.3",
        summary: "conjugation of i_θ and i_θ̄ by e^{i_φ}",
        runner: Runner::Forms(identities::conjugated_torsion),
    },
    IdentityInfo {
        id: "T3.8.4",
        summary: "conjugation of i_φ and i_[φ,φ] by e^{i_ψ̄}",
        runner: Runner::Forms(identities::conjugated_interiors),
    },
    IdentityInfo {
        id: "T3.8.5",
        summary: "conjugation of 𝓛_φ by e^{i_ψ̄}",
        runner: Runner::Forms(identities::conjugated_lie),
    },
    IdentityInfo {
        id: "T3.8.6",
        summary: "double conjugation e^{-i_ψ̄} e^{-i_φ} ∇ e^{i_φ} e^{i_ψ̄}, direct and composed",
        runner: Runner::Forms(identities::double_conjugation),
    },
    IdentityInfo {
        id: "L3.7.1",
        summary: "[𝓛^(1,0)_φ, i_ψ] = i of the A^{0,2}(T^{1,0}) part of [φ,ψ]; [𝓛_φ, i_ψ] = i_[φ,ψ]",
        runner: Runner::Forms(identities::lie_holomorphic_commutator),
    },
    IdentityInfo {
        id: "L3.7.2",
        summary: "[𝓛^(0,1)_φ, i_ψ] = 0",
        runner: Runner::Forms(identities::lie_antiholomorphic_commutator),
    },
    IdentityInfo {
        id: "L3.7.3",
        summary: "-[[φ,θ]^∧,ψ]^∧ equals the A^{1,1}(T^{1,0}) + A^{0,2}(T^{0,1}) part of [φ,ψ]",
        runner: Runner::Forms(identities::torsion_bracket),
    },
    IdentityInfo {
        id: "EX3.1",
        summary: "d = ∂ + ∂̄ - i_θ - i_θ̄ and ∇ = ∇^(1,0) + ∇^(0,1) - i_θ - i_θ̄",
        runner: Runner::Forms(identities::connection_splitting),
    },
    IdentityInfo {
        id: "EQ2.4",
        summary: "[𝓛_K, i_L] = i_[K,L] - (-1)^{kl} 𝓛_{i_L K}",
        runner: Runner::Forms(identities::lie_interior_commutator),
    },
    IdentityInfo {
        id: "EQ2.3",
        summary: "bidegree types of [φ,ψ] for φ, ψ in A^{0,1}(T^{1,0})",
        runner: Runner::Forms(identities::bracket_types),
    },
    IdentityInfo {
        id: "R3.10",
        summary: "𝓛^(0,1)_φ = -i_{∂̄φ} for integrable J and flat trivial bundle",
        runner: Runner::Forms(identities::antiholomorphic_lie_is_algebraic),
    },
    IdentityInfo {
        id: "L3.6-matrix",
        summary: "e^{-y} x e^{y} = Σ [x,y]^(i)/i! for random matrices, nilpotent y",
        runner: Runner::Matrix(matrix_checks::closed_form_conjugation),
    },
    IdentityInfo {
        id: "P3.12",
        summary: "e^{-y} e^{x} e^{y} = e^{Σ [x,y]^(i)/i!} for nilpotent x, y",
        runner: Runner::Matrix(matrix_checks::conjugated_exponentials),
    },
    IdentityInfo {
        id: "P3.3",
        summary: "refined decomposition reassembles ∂, ∂̄, 𝓛^(1,0)_φ and 𝓛_φ",
        runner: Runner::Forms(identities::refined_decomposition),
    },
    IdentityInfo {
        id: "NEG-T3.8.1",
        summary: "negative control: the conjugated-connection identity with ½ replaced by 1 must be rejected",
        runner: Runner::Forms(identities::negative_control),
    },
    IdentityInfo {
        id: "NIL-EXP",
        summary: "(i_φ)^{n+1} = 0 and e^{i_φ} e^{-i_φ} = id, for φ and ψ̄",
        runner: Runner::Forms(identities::nilpotency),
    },
];

pub fn lookup(id: &str) -> Result<&'static IdentityInfo> {
    REGISTRY.iter().find(|info| info.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn all_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|info| info.id).collect()
}

/// One identity on one chart with one master seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub chart: ChartSpec,
    pub rank: usize,
    pub seed: u64,
    /// Bound on the total degree of random polynomial coefficients.
    pub degree: u32,
    /// Probe generators concurrently.
    pub parallel: bool,
}

impl IdentityCheck {
    pub fn new(id: &str, chart: ChartSpec, seed: u64) -> Self {
        Self { id: id.to_string(), chart, rank: 2, seed, degree: 2, parallel: false }
    }
}

/// Runs one check. Only an unknown id is an error; failures while building
/// the inputs become failing reports.
pub fn check_identity(check: &IdentityCheck) -> Result<IdentityReport> {
    let info = lookup(&check.id)?;
    if check.rank == 0 {
        return Err(Error::Config("bundle rank must be at least 1".into()));
    }
    let seeds = Seeds::derive(check.seed);
    let start = Instant::now();
    let outcome = match &info.runner {
        Runner::Forms(f) => Setup::new(check).and_then(|s| f(&s)),
        Runner::Matrix(f) => f(seeds.extra),
    };
    let millis = start.elapsed().as_millis() as u64;
    let (status, reason, worst_residual) = match outcome {
        Ok(Outcome::Pass) => (Status::Pass, None, None),
        Ok(Outcome::PassWith(note)) => (Status::Pass, Some(note), None),
        Ok(Outcome::Fail { reason, worst }) => (Status::Fail, Some(reason), worst),
        Ok(Outcome::Skip(reason)) => (Status::Skip, Some(reason), None),
        Err(e) => (Status::Fail, Some(format!("construction error: {e}")), None),
    };
    Ok(IdentityReport {
        id: check.id.clone(),
        chart: check.chart.to_string(),
        status,
        reason,
        seeds: seeds.to_map(),
        worst_residual,
        millis,
    })
}

/// Runs every check; reports come back in input order whether or not the
/// checks ran concurrently.
pub fn run_suite(checks: &[IdentityCheck], parallel: bool) -> Result<Vec<IdentityReport>> {
    for c in checks {
        lookup(&c.id)?;
    }
    if parallel {
        checks.par_iter().map(check_identity).collect()
    } else {
        checks.iter().map(check_identity).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids = all_ids();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
    }

    #[test]
    fn unknown_id_is_an_error() {
        let c = IdentityCheck::new("T9.9", ChartSpec::Standard(1), 0);
        assert!(matches!(check_identity(&c), Err(Error::UnknownIdentity(_))));
        assert!(matches!(run_suite(&[c], false), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn skip_on_non_integrable_chart() {
        let mut c = IdentityCheck::new("R3.10", ChartSpec::Twisted(2), 1);
        c.rank = 1;
        let r = check_identity(&c).unwrap();
        assert!(r.skipped());
        assert_eq!(r.reason.as_deref(), Some("requires integrable J"));
    }

    #[test]
    fn cheap_checks_pass_on_standard_chart() {
        for id in ["EX3.1", "EQ2.3", "R3.10", "L3.7.2", "NIL-EXP"] {
            let mut c = IdentityCheck::new(id, ChartSpec::Standard(1), 5);
            c.rank = 1;
            let r = check_identity(&c).unwrap();
            assert!(r.passed(), "{id}: {r:?}");
        }
    }
}
