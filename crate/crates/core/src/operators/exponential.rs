use crate::algebra::GaussRational;
use crate::chart::Chart;
use crate::forms::{ValueSide, VectorForm};
use crate::{Error, Result};

use super::DerivationOp;

/// `i_φ` is nilpotent of order `n + 1` when `φ` lies in `A^{0,1}(T^{1,0})` or
/// its conjugate type; anything else is rejected.
fn check_nilpotent_type(chart: &Chart, phi: &VectorForm) -> Result<()> {
    let bound = chart.complex_dim() + 1;
    if phi.degree() != 1 || phi.dim() != chart.dim() {
        return Err(Error::NotNilpotent { bound });
    }
    let pure = |p, q, side| phi.bidegree_component(chart, p, q, side) == *phi;
    if pure(0, 1, ValueSide::Holomorphic) || pure(1, 0, ValueSide::Antiholomorphic) {
        Ok(())
    } else {
        Err(Error::NotNilpotent { bound })
    }
}

fn truncated_exp(phi: &VectorForm, order: usize, sign: i64) -> DerivationOp {
    let phi = phi.scale(&GaussRational::from_int(sign));
    let tag = if sign > 0 { "e^{i_φ}" } else { "e^{-i_φ}" };
    DerivationOp::new(0, tag, move |u| {
        let mut acc = u.clone();
        let mut term = u.clone();
        for k in 1..=order {
            term = term.interior(&phi)?.scale(&GaussRational::ratio(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    })
}

/// `(e^{i_φ}, e^{-i_φ})`, each the series `Σ_{k ≤ n} (±i_φ)^k / k!`.
pub fn exp_interior(chart: &Chart, phi: &VectorForm) -> Result<(DerivationOp, DerivationOp)> {
    check_nilpotent_type(chart, phi)?;
    let n = chart.complex_dim();
    Ok((truncated_exp(phi, n, 1), truncated_exp(phi, n, -1)))
}

/// `e^{-i_φ} ∘ D ∘ e^{i_φ}`, by direct composition of the truncated series.
pub fn conjugate_operator(chart: &Chart, d: &DerivationOp, phi: &VectorForm) -> Result<DerivationOp> {
    let (exp, inv) = exp_interior(chart, phi)?;
    Ok(inv.compose(&d.compose(&exp)).with_tag(format!("e^(-i_φ) {} e^(i_φ)", d.tag())))
}
