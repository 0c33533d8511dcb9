use std::sync::Arc;

use rand::Rng;

use crate::chart::Chart;
use crate::forms::random::random_scalar_form;
use crate::forms::{Bidegree, BundleForm, ScalarForm, VectorForm};
use crate::{Error, Result};

use super::DerivationOp;

/// A connection `∇ = d + ω∧` on the trivial bundle `E = M × ℂ^r` over a chart.
#[derive(Clone, Debug)]
pub struct Connection {
    chart: Arc<Chart>,
    omega: Vec<Vec<ScalarForm>>,
}

/// Which part of `∇` a Lie derivative is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieFlavor {
    /// `[i_K, ∇]`
    Full,
    /// `[i_K, ∇^{1,0}]`
    Holomorphic,
    /// `[i_K, ∇^{0,1}]`
    Antiholomorphic,
}

/// The four bidegree pieces `∇ = ∇^{1,0} + ∇^{0,1} - i_θ - i_θ̄`.
#[derive(Clone, Debug)]
pub struct ConnectionSplit {
    pub nabla_10: DerivationOp,
    pub nabla_01: DerivationOp,
    pub i_theta: DerivationOp,
    pub i_theta_bar: DerivationOp,
}

impl Connection {
    /// `ω` must be an `r × r` matrix of 1-forms on the chart.
    pub fn new(chart: Arc<Chart>, omega: Vec<Vec<ScalarForm>>) -> Result<Self> {
        let rank = omega.len();
        if rank == 0 {
            return Err(Error::RankMismatch { left: 0, right: 1 });
        }
        for row in &omega {
            if row.len() != rank {
                return Err(Error::Shape { expected: rank, rows: rank, cols: row.len() });
            }
            for entry in row {
                entry.check_dim(chart.dim())?;
                if !entry.is_homogeneous_of(1) {
                    return Err(Error::Degree("connection entries must be 1-forms".into()));
                }
            }
        }
        Ok(Self { chart, omega })
    }

    /// The flat connection `∇ = d`.
    pub fn trivial(chart: Arc<Chart>, rank: usize) -> Result<Self> {
        let dim = chart.dim();
        Self::new(chart, vec![vec![ScalarForm::zero(dim); rank]; rank])
    }

    /// A connection whose `ω` entries are random polynomial 1-forms.
    pub fn random<R: Rng>(rng: &mut R, chart: Arc<Chart>, rank: usize, max_degree: u32) -> Result<Self> {
        let dim = chart.dim();
        let omega = (0..rank)
            .map(|_| (0..rank).map(|_| random_scalar_form(rng, dim, 1, max_degree)).collect())
            .collect();
        Self::new(chart, omega)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[Vec<ScalarForm>] {
        &self.omega
    }

    /// `∇u = du + ω ∧ u`.
    pub fn apply(&self, u: &BundleForm) -> Result<BundleForm> {
        u.check_rank(self.rank())?;
        if u.dim() != self.chart.dim() {
            return Err(Error::DimensionMismatch { left: u.dim(), right: self.chart.dim() });
        }
        let mut comps = Vec::with_capacity(self.rank());
        for (i, row) in self.omega.iter().enumerate() {
            let mut c = u.component(i).exterior_d();
            for (j, w) in row.iter().enumerate() {
                if !w.is_zero() && !u.component(j).is_zero() {
                    c = c.add(&w.wedge(u.component(j))?);
                }
            }
            comps.push(c);
        }
        BundleForm::from_components(u.dim(), comps)
    }

    pub fn nabla(&self) -> DerivationOp {
        let conn = self.clone();
        DerivationOp::new(1, "∇", move |u| conn.apply(u))
    }

    fn nabla_part(&self, bd: Bidegree, tag: &str) -> DerivationOp {
        self.nabla()
            .bidegree_part(self.chart.clone(), bd)
            .expect("bidegree total is 1")
            .with_tag(tag)
    }

    /// `∇^{1,0} = Σ Π^{p+1,q} ∇ Π^{p,q}`.
    pub fn nabla_10(&self) -> DerivationOp {
        self.nabla_part(Bidegree::new(1, 0), "∇^(1,0)")
    }

    /// `∇^{0,1} = Σ Π^{p,q+1} ∇ Π^{p,q}`.
    pub fn nabla_01(&self) -> DerivationOp {
        self.nabla_part(Bidegree::new(0, 1), "∇^(0,1)")
    }

    pub fn split(&self) -> ConnectionSplit {
        let theta = self.chart.torsion_form();
        let theta_bar = theta.conj();
        ConnectionSplit {
            nabla_10: self.nabla_10(),
            nabla_01: self.nabla_01(),
            i_theta: DerivationOp::interior(&theta).with_tag("i_θ").with_bidegree(Bidegree::new(2, -1)),
            i_theta_bar: DerivationOp::interior(&theta_bar)
                .with_tag("i_θ̄")
                .with_bidegree(Bidegree::new(-1, 2)),
        }
    }

    /// `[i_K, ∇]`, `[i_K, ∇^{1,0}]` or `[i_K, ∇^{0,1}]`.
    pub fn lie_derivative(&self, k: &VectorForm, flavor: LieFlavor) -> DerivationOp {
        let (base, tag) = match flavor {
            LieFlavor::Full => (self.nabla(), "𝓛_K"),
            LieFlavor::Holomorphic => (self.nabla_10(), "𝓛^(1,0)_K"),
            LieFlavor::Antiholomorphic => (self.nabla_01(), "𝓛^(0,1)_K"),
        };
        DerivationOp::interior(k).graded_commutator(&base).with_tag(tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyScalar;
    use crate::forms::random::{random_bundle_form, random_poly, rng_from_seed};

    fn twisted() -> Arc<Chart> {
        Arc::new(Chart::twisted_builtin(2).unwrap())
    }

    #[test]
    fn flat_connection_is_d() {
        let conn = Connection::trivial(twisted(), 2).unwrap();
        let mut rng = rng_from_seed(3);
        let u = random_bundle_form(&mut rng, 4, 2, 1, 2);
        assert_eq!(conn.nabla().apply(&u).unwrap(), u.exterior_d());
    }

    #[test]
    fn leibniz_over_functions() {
        let mut rng = rng_from_seed(11);
        let conn = Connection::random(&mut rng, twisted(), 2, 1).unwrap();
        for k in 0..3 {
            let f = random_poly(&mut rng, 4, 2);
            let u = random_bundle_form(&mut rng, 4, 2, k, 2);
            let lhs = conn.apply(&u.mul_function(&f)).unwrap();
            let df = ScalarForm::function(f.clone()).exterior_d();
            let rhs = u.wedge_left(&df).unwrap().add(&conn.apply(&u).unwrap().mul_function(&f));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn section_goes_to_one_form() {
        let mut rng = rng_from_seed(5);
        let conn = Connection::random(&mut rng, twisted(), 2, 1).unwrap();
        let image = conn.apply(&BundleForm::section(4, 2, 0)).unwrap();
        assert_eq!(image.max_degree(), Some(1));
        assert!(image.components().iter().all(|c| c.is_homogeneous_of(1)));
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let conn = Connection::trivial(twisted(), 2).unwrap();
        let u = BundleForm::section(4, 1, 0);
        assert!(matches!(conn.apply(&u), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn lie_derivative_of_coordinate_field() {
        let chart = Arc::new(Chart::standard(1).unwrap());
        let conn = Connection::trivial(chart, 1).unwrap();
        let e1 = VectorForm::coordinate_field(2, 0).unwrap();
        let x1 = BundleForm::simple(ScalarForm::coordinate(2, 0).unwrap(), 1, 0);
        let out = conn.lie_derivative(&e1, LieFlavor::Full).apply(&x1).unwrap();
        assert_eq!(out, BundleForm::simple(ScalarForm::function(PolyScalar::one(2)), 1, 0));
    }
}
