use std::fmt;

use crate::algebra::{GaussRational, PolyScalar};
use crate::chart::Chart;
use crate::{Error, Result};

use super::bidegree::ValueSide;
use super::mask;
use super::scalar::ScalarForm;

/// A tangent-valued form `K = Σ_a κ^a ⊗ ∂_a ∈ A^k(T_ℂ)`.
///
/// `i_K` is a derivation of degree `k - 1`, `𝓛_K` one of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorForm {
    dim: usize,
    degree: usize,
    comps: Vec<ScalarForm>,
}

/// `(-1)^{a·b}` for possibly negative degrees.
pub(crate) fn parity_sign(a: i32, b: i32) -> i64 {
    if (a * b).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl VectorForm {
    /// One component per tangent axis; each must be homogeneous of `degree`.
    pub fn new(degree: usize, comps: Vec<ScalarForm>) -> Result<Self> {
        let dim = comps.first().map(ScalarForm::dim).unwrap_or(0);
        if comps.len() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: comps.len() });
        }
        for c in &comps {
            c.check_dim(dim)?;
            if !c.is_homogeneous_of(degree) {
                return Err(Error::Degree(format!(
                    "vector form component is not homogeneous of degree {degree}"
                )));
            }
        }
        Ok(Self { dim, degree, comps })
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, comps: vec![ScalarForm::zero(dim); dim] }
    }

    /// The vector field `Σ X^a ∂_a`.
    pub fn vector_field(comps: Vec<PolyScalar>) -> Result<Self> {
        Self::new(0, comps.into_iter().map(ScalarForm::function).collect())
    }

    /// `∂_a`.
    pub fn coordinate_field(dim: usize, a: usize) -> Result<Self> {
        if a >= dim {
            return Err(Error::AxisOutOfRange { axis: a, num_vars: dim });
        }
        let mut k = Self::zero(dim, 0);
        k.comps[a] = ScalarForm::constant(dim, GaussRational::ONE);
        Ok(k)
    }

    /// `α ⊗ ∂_a`.
    pub fn simple(alpha: ScalarForm, a: usize) -> Result<Self> {
        let dim = alpha.dim();
        let degree = alpha.degree().unwrap_or(0);
        if a >= dim {
            return Err(Error::AxisOutOfRange { axis: a, num_vars: dim });
        }
        let mut comps = vec![ScalarForm::zero(dim); dim];
        comps[a] = alpha;
        Self::new(degree, comps)
    }

    /// The identity `I = Σ_a dx^a ⊗ ∂_a`, for which `i_I` counts degree and `𝓛_I = d`.
    pub fn identity(dim: usize) -> Self {
        let comps = (0..dim).map(|a| ScalarForm::basis(dim, mask::single(a))).collect();
        Self { dim, degree: 1, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree of the interior derivation `i_K`.
    pub fn interior_degree(&self) -> i32 {
        self.degree as i32 - 1
    }

    pub fn component(&self, a: usize) -> &ScalarForm {
        &self.comps[a]
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

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add vector forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible vector forms")
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

    fn map(&self, f: impl Fn(&ScalarForm) -> ScalarForm) -> Self {
        Self { dim: self.dim, degree: self.degree, comps: self.comps.iter().map(f).collect() }
    }

    /// `i_K α = Σ_a κ^a ∧ i_{∂_a} α`.
    pub fn interior(&self, alpha: &ScalarForm) -> Result<ScalarForm> {
        alpha.check_dim(self.dim)?;
        let mut out = ScalarForm::zero(self.dim);
        for (a, kappa) in self.comps.iter().enumerate() {
            if kappa.is_zero() {
                continue;
            }
            let inner = alpha.interior_coordinate(a);
            if inner.is_zero() {
                continue;
            }
            out = out.add(&kappa.wedge(&inner)?);
        }
        Ok(out)
    }

    /// `i_K L`: `i_K` applied to every component of `L`. Zero when `L` is a
    /// vector field.
    pub fn contract(&self, l: &VectorForm) -> Result<VectorForm> {
        if self.dim != l.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: l.dim });
        }
        let degree = (self.degree + l.degree).saturating_sub(1);
        if l.degree == 0 {
            return Ok(Self::zero(self.dim, degree));
        }
        let comps = l.comps.iter().map(|c| self.interior(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { dim: self.dim, degree, comps })
    }

    /// Nijenhuis–Richardson bracket `[K, L]^∧ = i_K L - (-1)^{kl} i_L K`,
    /// with `k`, `l` the interior degrees.
    pub fn nr_bracket(&self, l: &VectorForm) -> Result<VectorForm> {
        let sign = parity_sign(self.interior_degree(), l.interior_degree());
        let a = self.contract(l)?;
        let b = l.contract(self)?;
        Ok(a.sub(&b.scale(&GaussRational::from_int(sign))))
    }

    /// `[…[[K, L]^∧, L]^∧ …, L]^∧`, `j` times; `j = 0` gives `K`.
    pub fn iterated_nr_bracket(&self, l: &VectorForm, j: usize) -> Result<VectorForm> {
        let mut acc = self.clone();
        for _ in 0..j {
            acc = acc.nr_bracket(l)?;
        }
        Ok(acc)
    }

    /// Lie derivative `𝓛_K α = i_K dα - (-1)^{k-1} d i_K α` on scalar forms.
    pub fn lie_derivative(&self, alpha: &ScalarForm) -> Result<ScalarForm> {
        let first = self.interior(&alpha.exterior_d())?;
        let second = self.interior(alpha)?.exterior_d();
        let sign = parity_sign(self.interior_degree(), 1);
        Ok(first.sub(&second.scale(&GaussRational::from_int(sign))))
    }

    /// Frölicher–Nijenhuis bracket, read off from `[𝓛_K, 𝓛_L] x^a = [K, L]^a`.
    pub fn fn_bracket(&self, l: &VectorForm) -> Result<VectorForm> {
        if self.dim != l.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: l.dim });
        }
        // 𝓛_M x^a = M^a
        let sign = GaussRational::from_int(parity_sign(self.degree as i32, l.degree as i32));
        let comps = (0..self.dim)
            .map(|a| {
                let kl = self.lie_derivative(&l.comps[a])?;
                let lk = l.lie_derivative(&self.comps[a])?;
                Ok(kl.sub(&lk.scale(&sign)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim: self.dim, degree: self.degree + l.degree, comps })
    }

    /// Applies a value projector: `(P K)^a = Σ_b P[a][b] κ^b`.
    pub fn project_values(&self, chart: &Chart, side: ValueSide) -> VectorForm {
        let p = match side {
            ValueSide::Holomorphic => &chart.projectors().p10,
            ValueSide::Antiholomorphic => &chart.projectors().p01,
        };
        let comps = (0..self.dim)
            .map(|a| {
                let mut acc = ScalarForm::zero(self.dim);
                for (b, kappa) in self.comps.iter().enumerate() {
                    let entry = p.get(a, b);
                    if !entry.is_zero() && !kappa.is_zero() {
                        acc = acc.add(&kappa.mul_function(entry));
                    }
                }
                acc
            })
            .collect();
        Self { dim: self.dim, degree: self.degree, comps }
    }

    /// `Π^{p,q}` on every component (form slots only).
    pub fn project_slots(&self, chart: &Chart, p: usize, q: usize) -> VectorForm {
        let comps = self.comps.iter().map(|c| chart.project(c, p, q)).collect();
        Self { dim: self.dim, degree: self.degree, comps }
    }

    /// Keeps the `(p, q)` slots with values in `side`.
    pub fn bidegree_component(&self, chart: &Chart, p: usize, q: usize, side: ValueSide) -> VectorForm {
        self.project_slots(chart, p, q).project_values(chart, side)
    }

    /// Applies `f` to every component; the results must have degree `degree`.
    pub fn map_components(&self, degree: usize, f: impl Fn(&ScalarForm) -> ScalarForm) -> Result<Self> {
        Self::new(degree, self.comps.iter().map(f).collect())
    }
}

impl fmt::Display for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}] d/dx{}", a + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
