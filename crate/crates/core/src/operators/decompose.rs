use crate::algebra::PolyScalar;
use crate::forms::{Bidegree, BundleForm, ScalarForm, ValueSide, VectorForm};
use crate::{Error, Result};

use super::{Connection, DerivationOp, GeneratorFamily, LieFlavor};

/// `𝓛_K` of the given flavor, or the zero operator of `degree` when `K = 0`
/// (which also covers the degree -1 case where no `K` exists).
fn lie_or_zero(conn: &Connection, k: &VectorForm, flavor: LieFlavor, degree: i32) -> DerivationOp {
    if k.is_zero() {
        DerivationOp::zero(degree)
    } else {
        conn.lie_derivative(k, flavor)
    }
}

fn interior_or_zero(l: &VectorForm, degree: i32) -> DerivationOp {
    if l.is_zero() {
        DerivationOp::zero(degree)
    } else {
        DerivationOp::interior(l)
    }
}

fn not_a_derivation(what: &str, e: Error) -> Error {
    Error::NotADerivation(format!("{what}: {e}"))
}

/// Reads off the tangent-valued form whose `a`-th component is the `s_1`
/// component of `probe(a)`.
fn extract(
    dim: usize,
    degree: usize,
    what: &str,
    probe: impl Fn(usize) -> Result<BundleForm>,
) -> Result<VectorForm> {
    let comps = (0..dim)
        .map(|a| probe(a).map(|u| u.component(0).clone()))
        .collect::<Result<Vec<_>>>()?;
    VectorForm::new(degree, comps).map_err(|e| not_a_derivation(what, e))
}

fn check_reassembly(family: &GeneratorFamily, d: &DerivationOp, rebuilt: &DerivationOp) -> Result<()> {
    match family.compare(d, rebuilt, false)? {
        None => Ok(()),
        Some(m) => Err(Error::NotADerivation(format!("reassembly differs {}", m.describe()))),
    }
}

/// The unique `(K, L)` with `D = 𝓛_K + i_L`.
///
/// `K^a` is read from `D(x^a s_1) - x^a D(s_1)`, `L^a` from the algebraic
/// remainder applied to `dx^a s_1`. The reassembly is checked on `family`.
pub fn decompose_derivation(
    d: &DerivationOp,
    conn: &Connection,
    family: &GeneratorFamily,
) -> Result<(VectorForm, VectorForm)> {
    let (dim, rank) = (conn.chart().dim(), conn.rank());
    let k = d.degree();
    if k < -1 {
        return Err(Error::Degree(format!("no derivation of degree {k} is determined by generators")));
    }
    let s1 = BundleForm::section(dim, rank, 0);
    let kf = if k >= 0 {
        let d_s1 = d.apply(&s1)?;
        extract(dim, k as usize, "Lie part", |a| {
            let xa = PolyScalar::var(dim, a)?;
            let image = d.apply(&s1.mul_function(&xa))?;
            Ok(image.sub(&d_s1.mul_function(&xa)))
        })?
    } else {
        VectorForm::zero(dim, 0)
    };
    let lie = lie_or_zero(conn, &kf, LieFlavor::Full, k);
    let remainder = d.try_sub(&lie)?;
    let lf = extract(dim, (k + 1) as usize, "algebraic part", |a| {
        remainder.apply(&BundleForm::simple(ScalarForm::dx(dim, a)?, rank, 0))
    })?;
    check_reassembly(family, d, &lie.try_add(&interior_or_zero(&lf, k))?)?;
    Ok((kf, lf))
}

/// `D = 𝓛^{1,0}_{K'} + 𝓛^{0,1}_{K''} + i_{L'} + i_{L''}` with
/// `K' ∈ A^{p,q}(T^{1,0})`, `K'' ∈ A^{p,q}(T^{0,1})`,
/// `L' ∈ A^{p+1,q}(T^{1,0})`, `L'' ∈ A^{p,q+1}(T^{0,1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedDecomposition {
    pub bidegree: Bidegree,
    pub lie_10: VectorForm,
    pub lie_01: VectorForm,
    pub interior_10: VectorForm,
    pub interior_01: VectorForm,
}

impl RefinedDecomposition {
    pub fn reassemble(&self, conn: &Connection) -> Result<DerivationOp> {
        let k = self.bidegree.total();
        lie_or_zero(conn, &self.lie_10, LieFlavor::Holomorphic, k)
            .try_add(&lie_or_zero(conn, &self.lie_01, LieFlavor::Antiholomorphic, k))?
            .try_add(&interior_or_zero(&self.interior_10, k))?
            .try_add(&interior_or_zero(&self.interior_01, k))
    }
}

fn component(k: &VectorForm, conn: &Connection, p: i32, q: i32, side: ValueSide) -> VectorForm {
    if p < 0 || q < 0 {
        return VectorForm::zero(k.dim(), k.degree());
    }
    k.bidegree_component(conn.chart(), p as usize, q as usize, side)
}

/// Refines a derivation of pure bidegree `(p, q)`.
///
/// The Lie part of [`decompose_derivation`] is split by value type; what is
/// left over is algebraic and is read off as interior derivatives. The
/// quadruple is one valid choice, not a canonical one.
pub fn refined_decompose(
    d: &DerivationOp,
    bd: Bidegree,
    conn: &Connection,
    family: &GeneratorFamily,
) -> Result<RefinedDecomposition> {
    if bd.total() != d.degree() {
        return Err(Error::Bidegree { p: bd.p, q: bd.q, degree: d.degree() });
    }
    let (dim, rank) = (conn.chart().dim(), conn.rank());
    let k = d.degree();
    let (kf, _) = decompose_derivation(d, conn, family)?;
    let lie_10 = component(&kf, conn, bd.p, bd.q, ValueSide::Holomorphic);
    let lie_01 = component(&kf, conn, bd.p, bd.q, ValueSide::Antiholomorphic);
    let lie = lie_or_zero(conn, &lie_10, LieFlavor::Holomorphic, k)
        .try_add(&lie_or_zero(conn, &lie_01, LieFlavor::Antiholomorphic, k))?;
    let remainder = d.try_sub(&lie)?;
    let lf = extract(dim, (k + 1) as usize, "algebraic part", |a| {
        remainder.apply(&BundleForm::simple(ScalarForm::dx(dim, a)?, rank, 0))
    })?;
    let out = RefinedDecomposition {
        bidegree: bd,
        lie_10,
        lie_01,
        interior_10: component(&lf, conn, bd.p + 1, bd.q, ValueSide::Holomorphic),
        interior_01: component(&lf, conn, bd.p, bd.q + 1, ValueSide::Antiholomorphic),
    };
    check_reassembly(family, d, &out.reassemble(conn)?)?;
    Ok(out)
}

/// Refines every nonzero bidegree component `Σ Π^{a+p,b+q} D Π^{a,b}` of a
/// derivation that need not be pure; the pieces must sum back to `D`.
pub fn refined_decompose_all(
    d: &DerivationOp,
    conn: &Connection,
    family: &GeneratorFamily,
) -> Result<Vec<RefinedDecomposition>> {
    let k = d.degree();
    let dim = conn.chart().dim() as i32;
    let mut pieces = Vec::new();
    let mut total = DerivationOp::zero(k);
    for p in (-dim)..=(k + dim) {
        let bd = Bidegree::new(p, k - p);
        let part = d.bidegree_part(conn.chart().clone(), bd)?;
        if family.find_nonzero(&part, false)?.is_none() {
            continue;
        }
        let refined = refined_decompose(&part, bd, conn, family)?;
        total = total.try_add(&refined.reassemble(conn)?)?;
        pieces.push(refined);
    }
    check_reassembly(family, d, &total)?;
    Ok(pieces)
}
