use std::fmt;

use crate::algebra::{GaussRational, PolyScalar};
use crate::chart::Chart;
use crate::{Error, Result};

use super::{ScalarForm, VectorForm};

/// An `E`-valued form for the trivial bundle `E = M × ℂ^r`: one scalar form per
/// frame section `s_1 … s_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleForm {
    dim: usize,
    comps: Vec<ScalarForm>,
}

impl BundleForm {
    pub fn zero(dim: usize, rank: usize) -> Self {
        Self { dim, comps: vec![ScalarForm::zero(dim); rank] }
    }

    pub fn from_components(dim: usize, comps: Vec<ScalarForm>) -> Result<Self> {
        for c in &comps {
            c.check_dim(dim)?;
        }
        Ok(Self { dim, comps })
    }

    /// The frame section `s_j`.
    pub fn section(dim: usize, rank: usize, j: usize) -> Self {
        Self::simple(ScalarForm::constant(dim, GaussRational::ONE), rank, j)
    }

    /// `α ⊗ s_j`.
    pub fn simple(alpha: ScalarForm, rank: usize, j: usize) -> Self {
        assert!(j < rank, "section index {j} out of range for rank {rank}");
        let dim = alpha.dim();
        let mut comps = vec![ScalarForm::zero(dim); rank];
        comps[j] = alpha;
        Self { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, j: usize) -> &ScalarForm {
        &self.comps[j]
    }

    pub fn components(&self) -> &[ScalarForm] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarForm::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(ScalarForm::num_terms).sum()
    }

    /// Highest form degree present, `None` when zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.comps
            .iter()
            .flat_map(|c| c.components().map(|(m, _)| m.count_ones() as usize))
            .max()
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch { left: self.rank(), right: rank });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        other.check_rank(self.rank())?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(Self { dim: self.dim, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible bundle forms")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(ScalarForm::neg)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn conj(&self) -> Self {
        self.map(ScalarForm::conj)
    }

    pub fn mul_function(&self, f: &PolyScalar) -> Self {
        self.map(|c| c.mul_function(f))
    }

    pub fn part_of_degree(&self, k: usize) -> Self {
        self.map(|c| c.part_of_degree(k))
    }

    /// Componentwise map.
    pub fn map(&self, f: impl Fn(&ScalarForm) -> ScalarForm) -> Self {
        Self { dim: self.dim, comps: self.comps.iter().map(f).collect() }
    }

    /// Fallible componentwise map.
    pub fn try_map(&self, f: impl Fn(&ScalarForm) -> Result<ScalarForm>) -> Result<Self> {
        Ok(Self { dim: self.dim, comps: self.comps.iter().map(f).collect::<Result<_>>()? })
    }

    /// `α ∧ u`.
    pub fn wedge_left(&self, alpha: &ScalarForm) -> Result<Self> {
        self.try_map(|c| alpha.wedge(c))
    }

    /// `i_K u`, componentwise.
    pub fn interior(&self, k: &VectorForm) -> Result<Self> {
        self.try_map(|c| k.interior(c))
    }

    /// `d` componentwise (the flat connection).
    pub fn exterior_d(&self) -> Self {
        self.map(ScalarForm::exterior_d)
    }

    /// `Π^{p,q}` componentwise; negative indices give zero.
    pub fn project(&self, chart: &Chart, p: i32, q: i32) -> Self {
        self.map(|c| chart.project_signed(c, p, q))
    }
}

impl fmt::Display for BundleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}] s{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
