use std::fmt;
use std::sync::Arc;

use crate::algebra::GaussRational;
use crate::chart::Chart;
use crate::forms::{parity_sign, Bidegree, BundleForm, VectorForm};
use crate::{Error, Result};

type Action = dyn Fn(&BundleForm) -> Result<BundleForm> + Send + Sync;

/// A homogeneous operator on bundle-valued forms.
///
/// The operator is an action, not a normal form: equality between operators
/// is decided extensionally (see [`super::GeneratorFamily`]). Composition does
/// not preserve derivation-hood, the graded commutator does.
#[derive(Clone)]
pub struct DerivationOp {
    degree: i32,
    bidegree: Option<Bidegree>,
    tag: String,
    action: Arc<Action>,
}

impl fmt::Debug for DerivationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationOp")
            .field("degree", &self.degree)
            .field("bidegree", &self.bidegree)
            .field("tag", &self.tag)
            .finish()
    }
}

impl DerivationOp {
    pub fn new<F>(degree: i32, tag: impl Into<String>, action: F) -> Self
    where
        F: Fn(&BundleForm) -> Result<BundleForm> + Send + Sync + 'static,
    {
        Self { degree, bidegree: None, tag: tag.into(), action: Arc::new(action) }
    }

    /// Declares a bidegree; its total must equal the degree.
    pub fn with_bidegree(mut self, bd: Bidegree) -> Self {
        assert_eq!(bd.total(), self.degree, "bidegree {bd} inconsistent with degree {}", self.degree);
        self.bidegree = Some(bd);
        self
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    pub fn identity() -> Self {
        Self::new(0, "id", |u| Ok(u.clone())).with_bidegree(Bidegree::new(0, 0))
    }

    pub fn zero(degree: i32) -> Self {
        Self::new(degree, "0", |u| Ok(BundleForm::zero(u.dim(), u.rank())))
    }

    /// The algebraic derivation `i_K`, acting componentwise.
    pub fn interior(k: &VectorForm) -> Self {
        let k = k.clone();
        let tag = "i_K".to_string();
        Self::new(k.interior_degree(), tag, move |u| u.interior(&k))
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn bidegree(&self) -> Option<Bidegree> {
        self.bidegree
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn apply(&self, u: &BundleForm) -> Result<BundleForm> {
        (self.action)(u)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DerivationOp) -> DerivationOp {
        let (a, b) = (self.clone(), other.clone());
        let bidegree = match (self.bidegree, other.bidegree) {
            (Some(x), Some(y)) => Some(Bidegree::new(x.p + y.p, x.q + y.q)),
            _ => None,
        };
        let tag = format!("{}∘{}", self.tag, other.tag);
        let mut op = Self::new(self.degree + other.degree, tag, move |u| a.apply(&b.apply(u)?));
        op.bidegree = bidegree;
        op
    }

    fn check_degree(&self, other: &DerivationOp) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add operators of degree {} ({}) and {} ({})",
                self.degree, self.tag, other.degree, other.tag
            )));
        }
        Ok(())
    }

    fn merged_bidegree(&self, other: &DerivationOp) -> Option<Bidegree> {
        match (self.bidegree, other.bidegree) {
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        }
    }

    /// Sum of homogeneous operators of equal degree.
    pub fn try_add(&self, other: &DerivationOp) -> Result<DerivationOp> {
        self.check_degree(other)?;
        let (a, b) = (self.clone(), other.clone());
        let tag = format!("({} + {})", self.tag, other.tag);
        let mut op = Self::new(self.degree, tag, move |u| Ok(a.apply(u)?.add(&b.apply(u)?)));
        op.bidegree = self.merged_bidegree(other);
        Ok(op)
    }

    pub fn try_sub(&self, other: &DerivationOp) -> Result<DerivationOp> {
        self.try_add(&other.neg()).map(|op| op.with_tag(format!("({} - {})", self.tag, other.tag)))
    }

    pub fn add(&self, other: &DerivationOp) -> DerivationOp {
        self.try_add(other).expect("operator degree mismatch")
    }

    pub fn sub(&self, other: &DerivationOp) -> DerivationOp {
        self.try_sub(other).expect("operator degree mismatch")
    }

    pub fn scale(&self, c: GaussRational) -> DerivationOp {
        let a = self.clone();
        let tag = format!("{}·{}", c, self.tag);
        let mut op = Self::new(self.degree, tag, move |u| Ok(a.apply(u)?.scale(&c)));
        op.bidegree = self.bidegree;
        op
    }

    pub fn neg(&self) -> DerivationOp {
        self.scale(GaussRational::from_int(-1)).with_tag(format!("-{}", self.tag))
    }

    /// `[D1, D2] = D1 D2 - (-1)^{k1 k2} D2 D1`.
    pub fn graded_commutator(&self, other: &DerivationOp) -> DerivationOp {
        let sign = GaussRational::from_int(parity_sign(self.degree, other.degree));
        let (a, b) = (self.clone(), other.clone());
        let tag = format!("[{}, {}]", self.tag, other.tag);
        let mut op = Self::new(self.degree + other.degree, tag, move |u| {
            let ab = a.apply(&b.apply(u)?)?;
            let ba = b.apply(&a.apply(u)?)?;
            Ok(ab.sub(&ba.scale(&sign)))
        });
        op.bidegree = match (self.bidegree, other.bidegree) {
            (Some(x), Some(y)) => Some(Bidegree::new(x.p + y.p, x.q + y.q)),
            _ => None,
        };
        op
    }

    /// The `(p, q)` bidegree component `Σ_{a,b} Π^{a+p, b+q} D Π^{a,b}`.
    pub fn bidegree_part(&self, chart: Arc<Chart>, bd: Bidegree) -> Result<DerivationOp> {
        if bd.total() != self.degree {
            return Err(Error::Bidegree { p: bd.p, q: bd.q, degree: self.degree });
        }
        let d = self.clone();
        let tag = format!("{}^{}", self.tag, bd);
        let op = Self::new(self.degree, tag, move |u| {
            let dim = chart.dim() as i32;
            let mut out = BundleForm::zero(u.dim(), u.rank());
            for k in 0..=dim {
                for a in 0..=k {
                    let piece = u.project(&chart, a, k - a);
                    if piece.is_zero() {
                        continue;
                    }
                    let image = d.apply(&piece)?;
                    out = out.add(&image.project(&chart, a + bd.p, k - a + bd.q));
                }
            }
            Ok(out)
        });
        Ok(op.with_bidegree(bd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyScalar;
    use crate::forms::ScalarForm;

    const DIM: usize = 4;

    fn d_op() -> DerivationOp {
        DerivationOp::new(1, "d", |u| Ok(u.exterior_d()))
    }

    fn sample() -> BundleForm {
        let x = |a| PolyScalar::var(DIM, a).unwrap();
        let alpha = ScalarForm::dx(DIM, 1).unwrap().mul_function(&(&x(0) * &x(2)));
        BundleForm::simple(alpha.add(&ScalarForm::function(&x(3) * &x(3))), 1, 0)
    }

    #[test]
    fn d_commutator_with_itself_vanishes() {
        let dd = d_op().graded_commutator(&d_op());
        assert_eq!(dd.degree(), 2);
        assert!(dd.apply(&sample()).unwrap().is_zero());
    }

    #[test]
    fn vector_field_interiors_anticommute() {
        let x = VectorForm::coordinate_field(DIM, 0).unwrap();
        let mut comps = vec![PolyScalar::zero(DIM); DIM];
        comps[1] = PolyScalar::var(DIM, 0).unwrap();
        let y = VectorForm::vector_field(comps).unwrap();
        let c = DerivationOp::interior(&x).graded_commutator(&DerivationOp::interior(&y));
        assert_eq!(c.degree(), -2);
        let vol = BundleForm::simple(ScalarForm::basis(DIM, 0b0111), 1, 0);
        assert!(c.apply(&vol).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_mixed_degrees() {
        assert!(matches!(d_op().try_add(&DerivationOp::identity()), Err(Error::Degree(_))));
    }

    #[test]
    fn identity_and_zero() {
        let u = sample();
        assert_eq!(DerivationOp::identity().apply(&u).unwrap(), u);
        assert!(DerivationOp::zero(3).apply(&u).unwrap().is_zero());
        assert_eq!(d_op().compose(&DerivationOp::identity()).apply(&u).unwrap(), u.exterior_d());
    }
}
