use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chart::Chart;
use crate::{Error, Result};

use super::{ScalarForm, VectorForm};

/// A bidegree `(p, q)`. Forms have `p, q ≥ 0`; derivations may have negative entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const fn new(p: i32, q: i32) -> Self {
        Self { p, q }
    }

    pub fn total(self) -> i32 {
        self.p + self.q
    }

    /// The conjugate bidegree `(q, p)`.
    pub fn swap(self) -> Self {
        Self { p: self.q, q: self.p }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Which summand of `T_ℂ = T^{1,0} ⊕ T^{0,1}` a tangent value lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValueSide {
    /// `T^{1,0}`
    Holomorphic,
    /// `T^{0,1}`
    Antiholomorphic,
}

impl ValueSide {
    pub fn conj(self) -> Self {
        match self {
            ValueSide::Holomorphic => ValueSide::Antiholomorphic,
            ValueSide::Antiholomorphic => ValueSide::Holomorphic,
        }
    }
}

impl fmt::Display for ValueSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSide::Holomorphic => write!(f, "T^(1,0)"),
            ValueSide::Antiholomorphic => write!(f, "T^(0,1)"),
        }
    }
}

fn check_form_bidegree(p: i32, q: i32, degree: Option<usize>, homogeneous_of: impl Fn(usize) -> bool) -> Result<(usize, usize)> {
    if p < 0 || q < 0 {
        return Err(Error::Bidegree { p, q, degree: p + q });
    }
    let k = (p + q) as usize;
    if !homogeneous_of(k) {
        return match degree {
            Some(d) => Err(Error::Bidegree { p, q, degree: d as i32 }),
            None => Err(Error::NotHomogeneous),
        };
    }
    Ok((p as usize, q as usize))
}

/// `Π^{p,q} α` for a homogeneous form of degree `p + q`.
pub fn split_scalar(chart: &Chart, alpha: &ScalarForm, p: i32, q: i32) -> Result<ScalarForm> {
    alpha.check_dim(chart.dim())?;
    let (p, q) = check_form_bidegree(p, q, alpha.degree(), |k| alpha.is_homogeneous_of(k))?;
    Ok(chart.project(alpha, p, q))
}

/// The `A^{p,q}(side)` component of a tangent-valued form of degree `p + q`.
pub fn split_vector(chart: &Chart, k: &VectorForm, p: i32, q: i32, side: ValueSide) -> Result<VectorForm> {
    if k.dim() != chart.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: chart.dim() });
    }
    let (p, q) = check_form_bidegree(p, q, Some(k.degree()), |d| d == k.degree())?;
    Ok(k.bidegree_component(chart, p, q, side))
}

/// Every `(p, q, side)` component of `k`, including zero ones.
pub fn all_components(chart: &Chart, k: &VectorForm) -> Vec<(Bidegree, ValueSide, VectorForm)> {
    let deg = k.degree();
    let mut out = Vec::with_capacity(2 * (deg + 1));
    for p in (0..=deg).rev() {
        for side in [ValueSide::Holomorphic, ValueSide::Antiholomorphic] {
            let piece = k.bidegree_component(chart, p, deg - p, side);
            out.push((Bidegree::new(p as i32, (deg - p) as i32), side, piece));
        }
    }
    out
}
