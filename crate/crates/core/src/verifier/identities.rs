//! One function per registry entry. Each builds both sides from the operator
//! algebra and hands them to a [`Checker`].

use crate::algebra::GaussRational;
use crate::forms::random::{random_vector_form, rng_from_seed};
use crate::forms::{all_components, Bidegree, BundleForm, ScalarForm, ValueSide, VectorForm};
use crate::operators::{
    conjugate_operator, exp_interior, refined_decompose, refined_decompose_all, Connection, DerivationOp, LieFlavor,
};
use crate::{Error, Result};

use super::setup::{Checker, Outcome, Setup};

const FACTORIALS: [i64; 5] = [1, 1, 2, 6, 24];

fn ratio(num: i64, den: i64) -> GaussRational {
    GaussRational::ratio(num, den)
}

fn i(k: &VectorForm) -> DerivationOp {
    DerivationOp::interior(k)
}

/// `Σ_{j=0}^{last} coeff(j) · [k, l]^∧(j)`.
fn nr_series(k: &VectorForm, l: &VectorForm, last: usize, coeff: impl Fn(usize) -> GaussRational) -> Result<VectorForm> {
    let mut acc = VectorForm::zero(k.dim(), k.degree());
    let mut term = k.clone();
    for j in 0..=last {
        if j > 0 {
            term = term.nr_bracket(l)?;
        }
        acc = acc.add(&term.scale(&coeff(j)));
    }
    Ok(acc)
}

fn exp_series(k: &VectorForm, l: &VectorForm, last: usize) -> Result<VectorForm> {
    nr_series(k, l, last, |j| ratio(1, FACTORIALS[j]))
}

/// `∇ - 𝓛_φ - ½ i_{[φ,φ]} - ⅙ i_{[[φ,φ],φ]^∧}`, with `c` in place of `½`.
fn nabla_conjugated(conn: &Connection, phi: &VectorForm, c: GaussRational) -> Result<DerivationOp> {
    let pp = phi.fn_bracket(phi)?;
    let ppp = pp.nr_bracket(phi)?;
    Ok(conn
        .nabla()
        .sub(&conn.lie_derivative(phi, LieFlavor::Full))
        .sub(&i(&pp).scale(c))
        .sub(&i(&ppp).scale(ratio(1, 6))))
}

/// `i_ψ̄ φ`.
fn chi(s: &Setup) -> Result<VectorForm> {
    s.psi_bar.contract(&s.phi)
}

/// Right side for `𝓛_φ` conjugated by `ψ̄`. The `[φ,ψ̄]` series runs to
/// `j = 3`: without integrability `[φ,ψ̄]` has an `A^{0,2}(T^{1,0})` part that
/// survives three brackets with `ψ̄`.
fn lie_conjugated(s: &Setup) -> Result<DerivationOp> {
    lie_conjugated_truncated(s, 3)
}

pub(crate) fn lie_conjugated_truncated(s: &Setup, last: usize) -> Result<DerivationOp> {
    let chi = chi(s)?;
    let first = nr_series(&s.phi.fn_bracket(&s.psi_bar)?, &s.psi_bar, last, |j| ratio(1, FACTORIALS[j + 1]))?;
    let second = nr_series(&chi.fn_bracket(&s.psi_bar)?, &s.psi_bar, 2, |j| ratio(1, FACTORIALS[j + 2]))?;
    Ok(s.conn
        .lie_derivative(&s.phi.sub(&chi), LieFlavor::Full)
        .add(&i(&first))
        .sub(&i(&second)))
}

/// Note for reports when the `j = 3` term above is nonzero.
fn fourth_term_note(s: &Setup) -> Result<Option<String>> {
    let tail = s.phi.fn_bracket(&s.psi_bar)?.iterated_nr_bracket(&s.psi_bar, 3)?;
    Ok((!tail.is_zero()).then(|| {
        format!("[[φ,ψ̄],ψ̄]^∧(3) is nonzero here ({} terms); the j = 3 term is required", tail.num_terms())
    }))
}

pub(crate) fn conjugated_nabla(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let lhs = conjugate_operator(&s.chart, &s.conn.nabla(), &s.phi)?;
    c.operators("conjugated connection", &lhs, &nabla_conjugated(&s.conn, &s.phi, ratio(1, 2))?)?;
    Ok(c.finish())
}

pub(crate) fn conjugated_nabla_parts(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let pp = s.phi.fn_bracket(&s.phi)?;
    let pp_02 = pp.bidegree_component(&s.chart, 0, 2, ValueSide::Holomorphic);

    let n10 = s.conn.nabla_10();
    let lhs = conjugate_operator(&s.chart, &n10, &s.phi)?;
    let rhs = n10
        .sub(&s.conn.lie_derivative(&s.phi, LieFlavor::Holomorphic))
        .sub(&i(&pp_02).scale(ratio(1, 2)));
    c.operators("(1,0) part", &lhs, &rhs)?;

    let n01 = s.conn.nabla_01();
    let lhs = conjugate_operator(&s.chart, &n01, &s.phi)?;
    let rhs = n01.sub(&s.conn.lie_derivative(&s.phi, LieFlavor::Antiholomorphic));
    c.operators("(0,1) part", &lhs, &rhs)?;

    if s.chart.torsion_form().is_zero() {
        c.forms("bracket is of type (0,2) on integrable chart", &pp_02, &pp);
    }
    Ok(c.finish())
}

pub(crate) fn conjugated_torsion(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let theta = s.chart.torsion_form();
    let lhs = conjugate_operator(&s.chart, &i(&theta), &s.phi)?;
    c.operators("torsion", &lhs, &i(&exp_series(&theta, &s.phi, 3)?))?;
    let theta_bar = theta.conj();
    let lhs = conjugate_operator(&s.chart, &i(&theta_bar), &s.phi)?;
    c.operators("conjugate torsion", &lhs, &i(&theta_bar))?;
    Ok(c.finish())
}

pub(crate) fn conjugated_interiors(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let lhs = conjugate_operator(&s.chart, &i(&s.phi), &s.psi_bar)?;
    c.operators("i_φ", &lhs, &i(&exp_series(&s.phi, &s.psi_bar, 2)?))?;
    let pp = s.phi.fn_bracket(&s.phi)?;
    let lhs = conjugate_operator(&s.chart, &i(&pp), &s.psi_bar)?;
    c.operators("i_[φ,φ]", &lhs, &i(&exp_series(&pp, &s.psi_bar, 3)?))?;
    Ok(c.finish())
}

pub(crate) fn conjugated_lie(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let lhs = conjugate_operator(&s.chart, &s.conn.lie_derivative(&s.phi, LieFlavor::Full), &s.psi_bar)?;
    c.operators("Lie derivative", &lhs, &lie_conjugated(s)?)?;
    if let Some(note) = fourth_term_note(s)? {
        c.note(note);
    }
    Ok(c.finish())
}

pub(crate) fn double_conjugation(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let pp = s.phi.fn_bracket(&s.phi)?;
    let ppp = pp.nr_bracket(&s.phi)?;
    let rhs = nabla_conjugated(&s.conn, &s.psi_bar, ratio(1, 2))?
        .sub(&lie_conjugated(s)?)
        .sub(&i(&exp_series(&pp, &s.psi_bar, 3)?).scale(ratio(1, 2)))
        .sub(&i(&exp_series(&ppp, &s.psi_bar, 3)?).scale(ratio(1, 6)));

    let inner = conjugate_operator(&s.chart, &s.conn.nabla(), &s.phi)?;
    let direct = conjugate_operator(&s.chart, &inner, &s.psi_bar)?;
    c.operators("direct double conjugation", &direct, &rhs)?;

    let closed_inner = nabla_conjugated(&s.conn, &s.phi, ratio(1, 2))?;
    let composed = conjugate_operator(&s.chart, &closed_inner, &s.psi_bar)?;
    c.operators("conjugation of the single closed form", &composed, &rhs)?;
    if let Some(note) = fourth_term_note(s)? {
        c.note(note);
    }
    Ok(c.finish())
}

pub(crate) fn negative_control(s: &Setup) -> Result<Outcome> {
    let lhs = conjugate_operator(&s.chart, &s.conn.nabla(), &s.phi)?;
    let corrupted = nabla_conjugated(&s.conn, &s.phi, GaussRational::ONE)?;
    match s.family.compare(&lhs, &corrupted, s.parallel)? {
        Some(m) => Ok(Outcome::PassWith(format!(
            "corrupted identity rejected on {} ({} residual terms)",
            m.generator,
            m.residual.num_terms()
        ))),
        None if s.phi.fn_bracket(&s.phi)?.is_zero() => {
            Ok(Outcome::Skip("perturbation vanishes: [φ,φ] = 0 for this input".into()))
        }
        None => Ok(Outcome::Fail { reason: "corrupted identity was not detected".into(), worst: None }),
    }
}

pub(crate) fn nilpotency(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let n = s.chart.complex_dim();
    for (name, phi) in [("φ", &s.phi), ("ψ̄", &s.psi_bar)] {
        let mut power = DerivationOp::identity();
        for _ in 0..=n {
            power = power.compose(&i(phi));
        }
        c.operators(&format!("(i_{name})^(n+1)"), &power, &DerivationOp::zero(0))?;
        let (e, inv) = exp_interior(&s.chart, phi)?;
        c.operators(&format!("e^(i_{name}) e^(-i_{name})"), &e.compose(&inv), &DerivationOp::identity())?;
        c.operators(&format!("e^(-i_{name}) e^(i_{name})"), &inv.compose(&e), &DerivationOp::identity())?;
    }
    Ok(c.finish())
}

pub(crate) fn lie_holomorphic_commutator(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let bracket = s.phi.fn_bracket(&s.psi)?;
    let lhs = s.conn.lie_derivative(&s.phi, LieFlavor::Holomorphic).graded_commutator(&i(&s.psi));
    let rhs = i(&bracket.bidegree_component(&s.chart, 0, 2, ValueSide::Holomorphic));
    c.operators("[𝓛^(1,0)_φ, i_ψ]", &lhs, &rhs)?;
    let lhs = s.conn.lie_derivative(&s.phi, LieFlavor::Full).graded_commutator(&i(&s.psi));
    c.operators("[𝓛_φ, i_ψ]", &lhs, &i(&bracket))?;
    Ok(c.finish())
}

pub(crate) fn lie_antiholomorphic_commutator(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let lhs = s.conn.lie_derivative(&s.phi, LieFlavor::Antiholomorphic).graded_commutator(&i(&s.psi));
    c.operators("[𝓛^(0,1)_φ, i_ψ]", &lhs, &DerivationOp::zero(1))?;
    Ok(c.finish())
}

pub(crate) fn torsion_bracket(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let theta = s.chart.torsion_form();
    let phi_theta = s.phi.nr_bracket(&theta)?;
    let bracket = s.phi.fn_bracket(&s.psi)?;
    let lhs = phi_theta.nr_bracket(&s.psi)?.neg();
    let rhs = bracket
        .bidegree_component(&s.chart, 1, 1, ValueSide::Holomorphic)
        .add(&bracket.bidegree_component(&s.chart, 0, 2, ValueSide::Antiholomorphic));
    c.forms("-[[φ,θ]^∧,ψ]^∧", &lhs, &rhs);
    let split = s
        .conn
        .lie_derivative(&s.phi, LieFlavor::Holomorphic)
        .add(&s.conn.lie_derivative(&s.phi, LieFlavor::Antiholomorphic))
        .sub(&i(&phi_theta));
    c.operators("𝓛_φ split", &s.conn.lie_derivative(&s.phi, LieFlavor::Full), &split)?;
    Ok(c.finish())
}

pub(crate) fn connection_splitting(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    for (name, conn) in [("d", &s.flat), ("∇", &s.conn)] {
        let parts = conn.split();
        let rhs = parts.nabla_10.add(&parts.nabla_01).sub(&parts.i_theta).sub(&parts.i_theta_bar);
        c.operators(&format!("{name} splitting"), &conn.nabla(), &rhs)?;
    }
    // read θ back from the residual d - ∂ - ∂̄, which is -i_θ - i_θ̄
    let parts = s.flat.split();
    let remainder = s.flat.nabla().sub(&parts.nabla_10).sub(&parts.nabla_01);
    let dim = s.chart.dim();
    let rank = s.flat.rank();
    let comps = (0..dim)
        .map(|a| {
            let probe = BundleForm::simple(ScalarForm::dx(dim, a)?, rank, 0);
            Ok(s.chart.project(&remainder.apply(&probe)?.component(0).neg(), 2, 0))
        })
        .collect::<Result<Vec<_>>>()?;
    let extracted = VectorForm::new(2, comps)?;
    let theta = s.chart.torsion_form();
    c.forms("extracted torsion", &extracted, &theta);
    if s.chart.nijenhuis_tensor().is_zero() {
        c.forms("torsion on integrable chart", &theta, &VectorForm::zero(dim, 2));
    }
    Ok(c.finish())
}

pub(crate) fn lie_interior_commutator(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let mut rng = rng_from_seed(s.seeds.extra);
    let dim = s.chart.dim();
    for k_deg in [1, 2] {
        for l_deg in [1, 2] {
            let k = random_vector_form(&mut rng, dim, k_deg, s.degree);
            let l = random_vector_form(&mut rng, dim, l_deg, s.degree);
            let sign = if (k_deg * (l_deg - 1)) % 2 == 0 { 1 } else { -1 };
            let lhs = s.conn.lie_derivative(&k, LieFlavor::Full).graded_commutator(&i(&l));
            let rhs = i(&k.fn_bracket(&l)?).sub(
                &s.conn.lie_derivative(&l.contract(&k)?, LieFlavor::Full).scale(GaussRational::from_int(sign)),
            );
            c.operators(&format!("K in A^{k_deg}, L in A^{l_deg}"), &lhs, &rhs)?;
        }
    }
    Ok(c.finish())
}

pub(crate) fn bracket_types(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let bracket = s.phi.fn_bracket(&s.psi)?;
    let integrable = s.chart.torsion_form().is_zero();
    let allowed: &[(i32, i32, ValueSide)] = if integrable {
        &[(0, 2, ValueSide::Holomorphic)]
    } else {
        &[(0, 2, ValueSide::Holomorphic), (1, 1, ValueSide::Holomorphic), (0, 2, ValueSide::Antiholomorphic)]
    };
    let mut total = VectorForm::zero(bracket.dim(), bracket.degree());
    for (bd, side, piece) in all_components(&s.chart, &bracket) {
        total = total.add(&piece);
        let listed = allowed.iter().any(|&(p, q, v)| Bidegree::new(p, q) == bd && v == side);
        if !listed {
            c.forms(&format!("A^{bd}({side}) component"), &piece, &VectorForm::zero(bracket.dim(), bracket.degree()));
        }
    }
    c.forms("components sum to the bracket", &total, &bracket);
    Ok(c.finish())
}

pub(crate) fn antiholomorphic_lie_is_algebraic(s: &Setup) -> Result<Outcome> {
    if !s.chart.nijenhuis_tensor().is_zero() {
        return Ok(Outcome::Skip("requires integrable J".into()));
    }
    let mut c = Checker::new(&s.family, s.parallel);
    let chart = s.chart.clone();
    let dbar_phi = s.phi.map_components(2, |comp| chart.project(&comp.exterior_d(), 0, 2))?;
    let lhs = s.flat.lie_derivative(&s.phi, LieFlavor::Antiholomorphic);
    c.operators("𝓛^(0,1)_φ + i_{∂̄φ}", &lhs, &i(&dbar_phi).neg())?;
    Ok(c.finish())
}

pub(crate) fn refined_decomposition(s: &Setup) -> Result<Outcome> {
    let mut c = Checker::new(&s.family, s.parallel);
    let pure = [
        ("∂", &s.flat, s.flat.nabla_10(), Bidegree::new(1, 0)),
        ("∂̄", &s.flat, s.flat.nabla_01(), Bidegree::new(0, 1)),
        ("𝓛^(1,0)_φ", &s.conn, s.conn.lie_derivative(&s.phi, LieFlavor::Holomorphic), Bidegree::new(0, 1)),
    ];
    for (name, conn, d, bd) in pure {
        match refined_decompose(&d, bd, conn, &s.family) {
            Ok(r) => c.operators(name, &d, &r.reassemble(conn)?)?,
            Err(Error::NotADerivation(msg)) => c.fail(name, "(reassembly)", msg),
            Err(e) => return Err(e),
        }
    }
    let lie = s.conn.lie_derivative(&s.phi, LieFlavor::Full);
    match refined_decompose_all(&lie, &s.conn, &s.family) {
        Ok(pieces) => {
            let mut total = DerivationOp::zero(lie.degree());
            for p in &pieces {
                total = total.try_add(&p.reassemble(&s.conn)?)?;
            }
            c.operators("𝓛_φ", &lie, &total)?;
        }
        Err(Error::NotADerivation(msg)) => c.fail("𝓛_φ", "(reassembly)", msg),
        Err(e) => return Err(e),
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;
    use crate::verifier::IdentityCheck;

    fn setup(chart: ChartSpec, seed: u64) -> Setup {
        Setup::new(&IdentityCheck::new("T3.8.5", chart, seed)).unwrap()
    }

    fn conjugated_lie_lhs(s: &Setup) -> DerivationOp {
        conjugate_operator(&s.chart, &s.conn.lie_derivative(&s.phi, LieFlavor::Full), &s.psi_bar).unwrap()
    }

    #[test]
    fn printed_truncation_fails_without_integrability() {
        let s = setup(ChartSpec::Twisted(2), 1);
        let lhs = conjugated_lie_lhs(&s);
        let short = lie_conjugated_truncated(&s, 2).unwrap();
        assert!(s.family.compare(&lhs, &short, false).unwrap().is_some());
        assert!(fourth_term_note(&s).unwrap().is_some());

        let s = setup(ChartSpec::Standard(2), 1);
        let lhs = conjugated_lie_lhs(&s);
        let short = lie_conjugated_truncated(&s, 2).unwrap();
        assert_eq!(s.family.compare(&lhs, &short, false).unwrap(), None);
        assert!(fourth_term_note(&s).unwrap().is_none());
    }

    #[test]
    fn unit_coefficient_on_second_bracket_is_rejected() {
        let s = setup(ChartSpec::Twisted(2), 1);
        let pp = s.phi.fn_bracket(&s.phi).unwrap();
        assert!(!pp.iterated_nr_bracket(&s.psi_bar, 2).unwrap().is_zero());
        let lhs = conjugate_operator(&s.chart, &i(&pp), &s.psi_bar).unwrap();
        let printed = nr_series(&pp, &s.psi_bar, 3, |j| if j == 2 { ratio(1, 1) } else { ratio(1, FACTORIALS[j]) });
        assert!(s.family.compare(&lhs, &i(&printed.unwrap()), false).unwrap().is_some());
        assert_eq!(s.family.compare(&lhs, &i(&exp_series(&pp, &s.psi_bar, 3).unwrap()), false).unwrap(), None);
    }
}
