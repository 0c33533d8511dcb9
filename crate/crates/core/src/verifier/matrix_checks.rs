//! Conjugation formulas in the matrix algebra, against plain power series.

use crate::algebra::GaussRational;
use crate::forms::random::rng_from_seed;
use crate::operators::{commutable_degree, conjugated_exponential, conjugation_closed_form, AlgebraElement};
use crate::Result;

use super::setup::Outcome;

pub const PAIRS: usize = 100;
pub const SIZE: usize = 4;

/// `Σ_k m^k / k!` summed until the power vanishes; `m` must be nilpotent of
/// order at most `SIZE`.
fn series_exp(m: &AlgebraElement) -> AlgebraElement {
    let mut acc = AlgebraElement::identity(m.size());
    let mut power = AlgebraElement::identity(m.size());
    let mut factorial = 1i64;
    for k in 1..=m.size() {
        power = power.mul(m);
        factorial *= k as i64;
        acc = acc.add(&power.scale(&GaussRational::ratio(1, factorial)));
    }
    acc
}

fn neg(m: &AlgebraElement) -> AlgebraElement {
    m.scale(&GaussRational::from_int(-1))
}

fn describe(k: usize, x: &AlgebraElement, y: &AlgebraElement) -> String {
    format!("pair {k}: x = {x}, y = {y}")
}

/// Closed-form conjugation against `e^{-y} x e^{y}` on random pairs.
pub(crate) fn closed_form_conjugation(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed);
    let mut max_degree = 0;
    for k in 0..PAIRS {
        let x = AlgebraElement::random(&mut rng, SIZE);
        let y = AlgebraElement::random_strictly_upper(&mut rng, SIZE);
        let degree = commutable_degree(&x, &y)?;
        max_degree = max_degree.max(degree);
        let oracle = series_exp(&neg(&y)).mul(&x).mul(&series_exp(&y));
        let closed = conjugation_closed_form(&x, &y)?;
        if closed != oracle {
            return Ok(Outcome::Fail { reason: describe(k, &x, &y), worst: None });
        }
        if degree > 2 * SIZE - 1 {
            return Ok(Outcome::Fail { reason: format!("commutable degree {degree}, {}", describe(k, &x, &y)), worst: None });
        }
    }
    Ok(Outcome::PassWith(format!("{PAIRS}/{PAIRS} pairs exact, max commutable degree {max_degree}")))
}

/// `e^{-y} e^x e^y = e^{Σ}` on random nilpotent pairs.
pub(crate) fn conjugated_exponentials(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed);
    for k in 0..PAIRS {
        let x = AlgebraElement::random_strictly_upper(&mut rng, SIZE);
        let y = AlgebraElement::random_strictly_upper(&mut rng, SIZE);
        let oracle = series_exp(&neg(&y)).mul(&series_exp(&x)).mul(&series_exp(&y));
        if conjugated_exponential(&x, &y)? != oracle {
            return Ok(Outcome::Fail { reason: describe(k, &x, &y), worst: None });
        }
    }
    Ok(Outcome::PassWith(format!("{PAIRS}/{PAIRS} pairs exact")))
}
