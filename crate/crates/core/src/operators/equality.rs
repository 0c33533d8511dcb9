use rayon::prelude::*;

use crate::algebra::GaussRational;
use crate::forms::random::{random_bundle_form, rng_from_seed};
use crate::forms::{BundleForm, ScalarForm};
use crate::Result;

use super::DerivationOp;

/// A labelled probe form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub form: BundleForm,
}

/// The extensional test bed on which operator equality is decided:
/// `s_j`, `x^a s_j`, `dx^a ⊗ s_j`, `x^a dx^b ⊗ s_j`, plus seeded random forms
/// in every degree.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    items: Vec<Generator>,
}

/// A probe on which two operators disagree, with their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub generator: String,
    pub residual: BundleForm,
}

impl Mismatch {
    pub fn describe(&self) -> String {
        format!("on {}: {}", self.generator, self.residual)
    }
}

impl GeneratorFamily {
    /// Coordinate generators only.
    pub fn basic(dim: usize, rank: usize) -> Self {
        let mut items = Vec::new();
        let mut push = |label: String, alpha: ScalarForm, j: usize| {
            items.push(Generator { label, form: BundleForm::simple(alpha, rank, j) });
        };
        for j in 0..rank {
            let s = j + 1;
            push(format!("s{s}"), ScalarForm::constant(dim, GaussRational::ONE), j);
            for a in 0..dim {
                push(format!("x{} s{s}", a + 1), ScalarForm::coordinate(dim, a).expect("axis"), j);
            }
            for a in 0..dim {
                push(format!("dx{} s{s}", a + 1), ScalarForm::dx(dim, a).expect("axis"), j);
            }
            for a in 0..dim {
                let xa = ScalarForm::coordinate(dim, a).expect("axis");
                for b in 0..dim {
                    let dxb = ScalarForm::dx(dim, b).expect("axis");
                    push(format!("x{} dx{} s{s}", a + 1, b + 1), xa.wedge(&dxb).expect("same dim"), j);
                }
            }
        }
        Self { items }
    }

    /// Coordinate generators plus one random form per degree `0..=dim`.
    pub fn new(dim: usize, rank: usize, seed: u64, max_degree: u32) -> Self {
        let mut family = Self::basic(dim, rank);
        let mut rng = rng_from_seed(seed);
        for k in 0..=dim {
            let form = random_bundle_form(&mut rng, dim, rank, k, max_degree);
            family.items.push(Generator { label: format!("random {k}-form (seed {seed})"), form });
        }
        family
    }

    pub fn items(&self) -> &[Generator] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Probes `a - b` on every generator; returns the mismatch with the most
    /// residual terms (earliest on ties), or `None` when the operators agree.
    pub fn compare(&self, a: &DerivationOp, b: &DerivationOp, parallel: bool) -> Result<Option<Mismatch>> {
        let probe = |g: &Generator| -> Result<Option<Mismatch>> {
            let residual = a.apply(&g.form)?.sub(&b.apply(&g.form)?);
            Ok((!residual.is_zero()).then(|| Mismatch { generator: g.label.clone(), residual }))
        };
        let results: Vec<Result<Option<Mismatch>>> = if parallel {
            self.items.par_iter().map(probe).collect()
        } else {
            self.items.iter().map(probe).collect()
        };
        let mut worst: Option<Mismatch> = None;
        for r in results {
            if let Some(m) = r? {
                if worst.as_ref().is_none_or(|w| m.residual.num_terms() > w.residual.num_terms()) {
                    worst = Some(m);
                }
            }
        }
        Ok(worst)
    }

    /// Probes `d` alone; returns the generator with the largest nonzero image.
    pub fn find_nonzero(&self, d: &DerivationOp, parallel: bool) -> Result<Option<Mismatch>> {
        self.compare(d, &DerivationOp::zero(d.degree()), parallel)
    }
}
