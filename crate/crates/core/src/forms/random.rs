//! Seeded generators for test inputs. All randomness flows from an explicit
//! seed through ChaCha8, so outputs are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussRational, Monomial, PolyScalar};
use crate::chart::Chart;
use crate::{Error, Result};

use super::bidegree::{Bidegree, ValueSide};
use super::{mask, BundleForm, ScalarForm, VectorForm};

/// Terms per random coefficient polynomial are drawn from `1..=MAX_TERMS`.
pub const MAX_TERMS: usize = 2;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coeff<R: Rng>(rng: &mut R) -> GaussRational {
    loop {
        let re = rng.gen_range(-2i64..=2);
        let im = rng.gen_range(-2i64..=2);
        if re != 0 || im != 0 {
            return GaussRational::from_ints(re, im);
        }
    }
}

fn random_monomial<R: Rng>(rng: &mut R, num_vars: usize, max_degree: u32) -> Monomial {
    let total = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; num_vars];
    for _ in 0..total {
        exps[rng.gen_range(0..num_vars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// A sparse polynomial with `1..=MAX_TERMS` terms of total degree `≤ max_degree`
/// and Gaussian-integer coefficients with parts in `[-2, 2]`.
pub fn random_poly<R: Rng>(rng: &mut R, num_vars: usize, max_degree: u32) -> PolyScalar {
    let terms = rng.gen_range(1..=MAX_TERMS);
    PolyScalar::from_terms(
        num_vars,
        (0..terms).map(|_| (random_monomial(rng, num_vars, max_degree), random_coeff(rng))),
    )
}

/// A homogeneous degree-`k` form with a random coefficient on every basis element.
pub fn random_scalar_form<R: Rng>(rng: &mut R, dim: usize, k: usize, max_degree: u32) -> ScalarForm {
    ScalarForm::from_components(
        dim,
        mask::of_degree(dim, k).map(|m| (m, random_poly(rng, dim, max_degree))).collect::<Vec<_>>(),
    )
}

/// A raw tangent-valued form of degree `k` with no bidegree constraint.
pub fn random_vector_form<R: Rng>(rng: &mut R, dim: usize, k: usize, max_degree: u32) -> VectorForm {
    let comps = (0..dim).map(|_| random_scalar_form(rng, dim, k, max_degree)).collect();
    VectorForm::new(k, comps).expect("homogeneous components")
}

/// A random element of `A^{p,q}(side)`: a raw form projected on its slots and values.
pub fn random_form_with<R: Rng>(
    rng: &mut R,
    chart: &Chart,
    bidegree: Bidegree,
    side: ValueSide,
    max_degree: u32,
) -> Result<VectorForm> {
    let Bidegree { p, q } = bidegree;
    if p < 0 || q < 0 || (p + q) as usize > chart.dim() {
        return Err(Error::Bidegree { p, q, degree: p + q });
    }
    let raw = random_vector_form(rng, chart.dim(), (p + q) as usize, max_degree);
    Ok(raw.bidegree_component(chart, p as usize, q as usize, side))
}

/// Seeded version of [`random_form_with`].
pub fn random_form(
    chart: &Chart,
    bidegree: Bidegree,
    side: ValueSide,
    max_degree: u32,
    seed: u64,
) -> Result<VectorForm> {
    random_form_with(&mut rng_from_seed(seed), chart, bidegree, side, max_degree)
}

/// A homogeneous degree-`k` bundle-valued form of rank `rank`.
pub fn random_bundle_form<R: Rng>(rng: &mut R, dim: usize, rank: usize, k: usize, max_degree: u32) -> BundleForm {
    let comps = (0..rank).map(|_| random_scalar_form(rng, dim, k, max_degree)).collect();
    BundleForm::from_components(dim, comps).expect("same dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::bidegree::split_vector;

    #[test]
    fn deterministic_for_fixed_seed() {
        let chart = Chart::twisted_builtin(2).unwrap();
        let bd = Bidegree::new(0, 1);
        let a = random_form(&chart, bd, ValueSide::Holomorphic, 2, 42).unwrap();
        let b = random_form(&chart, bd, ValueSide::Holomorphic, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = random_form(&chart, bd, ValueSide::Holomorphic, 2, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn output_is_idempotent_under_split() {
        let chart = Chart::twisted_builtin(2).unwrap();
        let phi = random_form(&chart, Bidegree::new(0, 1), ValueSide::Holomorphic, 2, 5).unwrap();
        assert_eq!(split_vector(&chart, &phi, 0, 1, ValueSide::Holomorphic).unwrap(), phi);
    }

    #[test]
    fn nonzero_over_many_seeds() {
        let chart = Chart::standard(2).unwrap();
        let nonzero = (0..100)
            .filter(|s| {
                !random_form(&chart, Bidegree::new(0, 1), ValueSide::Holomorphic, 2, *s)
                    .unwrap()
                    .is_zero()
            })
            .count();
        assert_eq!(nonzero, 100);
    }

    #[test]
    fn rejects_bad_bidegree() {
        let chart = Chart::standard(1).unwrap();
        assert!(random_form(&chart, Bidegree::new(-1, 1), ValueSide::Holomorphic, 1, 0).is_err());
        assert!(random_form(&chart, Bidegree::new(2, 1), ValueSide::Holomorphic, 1, 0).is_err());
    }
}
