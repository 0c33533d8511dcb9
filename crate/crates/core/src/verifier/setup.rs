use std::collections::BTreeMap;
use std::sync::Arc;

use rand::RngCore;

use crate::chart::Chart;
use crate::forms::random::{random_form, rng_from_seed};
use crate::forms::{Bidegree, ValueSide, VectorForm};
use crate::operators::{Connection, DerivationOp, GeneratorFamily};
use crate::Result;

use super::report::Failure;
use super::IdentityCheck;

/// Seeds drawn, in a fixed order, from the master seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seeds {
    pub master: u64,
    pub connection: u64,
    pub phi: u64,
    pub psi: u64,
    pub probes: u64,
    pub extra: u64,
}

impl Seeds {
    pub fn derive(master: u64) -> Self {
        let mut rng = rng_from_seed(master);
        Self {
            master,
            connection: rng.next_u64(),
            phi: rng.next_u64(),
            psi: rng.next_u64(),
            probes: rng.next_u64(),
            extra: rng.next_u64(),
        }
    }

    pub fn to_map(self) -> BTreeMap<String, u64> {
        BTreeMap::from([
            ("master".to_string(), self.master),
            ("connection".to_string(), self.connection),
            ("phi".to_string(), self.phi),
            ("psi".to_string(), self.psi),
            ("probes".to_string(), self.probes),
            ("extra".to_string(), self.extra),
        ])
    }
}

/// Everything a form-level identity needs: the chart, a random connection and
/// the flat one, probes, and two random elements of `A^{0,1}(T^{1,0})`.
pub(crate) struct Setup {
    pub chart: Arc<Chart>,
    pub conn: Connection,
    pub flat: Connection,
    pub family: GeneratorFamily,
    pub phi: VectorForm,
    pub psi: VectorForm,
    pub psi_bar: VectorForm,
    pub degree: u32,
    pub seeds: Seeds,
    pub parallel: bool,
}

impl Setup {
    pub fn new(check: &IdentityCheck) -> Result<Self> {
        let chart = Arc::new(check.chart.build()?);
        let seeds = Seeds::derive(check.seed);
        let rank = check.rank;
        let conn = Connection::random(&mut rng_from_seed(seeds.connection), chart.clone(), rank, check.degree)?;
        let flat = Connection::trivial(chart.clone(), rank)?;
        let family = GeneratorFamily::new(chart.dim(), rank, seeds.probes, check.degree);
        let type_01 = Bidegree::new(0, 1);
        let phi = random_form(&chart, type_01, ValueSide::Holomorphic, check.degree, seeds.phi)?;
        let psi = random_form(&chart, type_01, ValueSide::Holomorphic, check.degree, seeds.psi)?;
        let psi_bar = psi.conj();
        Ok(Self {
            chart,
            conn,
            flat,
            family,
            phi,
            psi,
            psi_bar,
            degree: check.degree,
            seeds,
            parallel: check.parallel,
        })
    }
}

/// Collects named sub-residuals of one identity.
pub(crate) struct Checker<'a> {
    family: &'a GeneratorFamily,
    parallel: bool,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl<'a> Checker<'a> {
    pub fn new(family: &'a GeneratorFamily, parallel: bool) -> Self {
        Self { family, parallel, failures: Vec::new(), notes: Vec::new() }
    }

    /// Records a failure unless `lhs` and `rhs` agree on every probe.
    pub fn operators(&mut self, check: &str, lhs: &DerivationOp, rhs: &DerivationOp) -> Result<()> {
        if let Some(m) = self.family.compare(lhs, rhs, self.parallel)? {
            self.failures.push(Failure {
                check: check.to_string(),
                generator: m.generator,
                terms: m.residual.num_terms(),
                residual: m.residual.to_string(),
            });
        }
        Ok(())
    }

    /// Records a failure unless the two tangent-valued forms are equal.
    pub fn forms(&mut self, check: &str, lhs: &VectorForm, rhs: &VectorForm) {
        let residual = lhs.sub(rhs);
        if !residual.is_zero() {
            self.failures.push(Failure {
                check: check.to_string(),
                generator: "(form identity)".to_string(),
                terms: residual.num_terms(),
                residual: residual.to_string(),
            });
        }
    }

    pub fn fail(&mut self, check: &str, generator: &str, residual: String) {
        self.failures.push(Failure {
            check: check.to_string(),
            generator: generator.to_string(),
            terms: 1,
            residual,
        });
    }

    /// Attaches a note to a passing report.
    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            return if self.notes.is_empty() { Outcome::Pass } else { Outcome::PassWith(self.notes.join("; ")) };
        }
        let names: Vec<&str> = self.failures.iter().map(|f| f.check.as_str()).collect();
        let reason = format!("nonzero residual in: {}", names.join(", "));
        let worst = self
            .failures
            .iter()
            .fold(None::<&Failure>, |w, f| match w {
                Some(w) if w.terms >= f.terms => Some(w),
                _ => Some(f),
            })
            .cloned();
        Outcome::Fail { reason, worst }
    }
}

pub(crate) enum Outcome {
    Pass,
    /// Passed, with a note for the report.
    PassWith(String),
    Fail { reason: String, worst: Option<Failure> },
    Skip(String),
}
