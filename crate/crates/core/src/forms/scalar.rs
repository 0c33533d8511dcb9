use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{GaussRational, PolyScalar};
use crate::{Error, Result};

use super::mask::{self, Mask};

/// A complexified differential form on a chart of real dimension `dim`,
/// stored as polynomial coefficients against the coordinate coframe.
///
/// Mixed degrees are allowed; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarForm {
    dim: usize,
    comps: BTreeMap<Mask, PolyScalar>,
}

impl ScalarForm {
    pub fn zero(dim: usize) -> Self {
        Self { dim, comps: BTreeMap::new() }
    }

    pub fn function(p: PolyScalar) -> Self {
        let mut f = Self::zero(p.num_vars());
        f.insert(0, p);
        f
    }

    pub fn constant(dim: usize, c: GaussRational) -> Self {
        Self::function(PolyScalar::constant(dim, c))
    }

    /// The coordinate function `x^a`.
    pub fn coordinate(dim: usize, a: usize) -> Result<Self> {
        Ok(Self::function(PolyScalar::var(dim, a)?))
    }

    /// The coordinate differential `dx^a`.
    pub fn dx(dim: usize, a: usize) -> Result<Self> {
        if a >= dim {
            return Err(Error::AxisOutOfRange { axis: a, num_vars: dim });
        }
        Ok(Self::basis(dim, mask::single(a)))
    }

    /// `dx^{i1} ∧ … ∧ dx^{ik}` for the coordinates in `m`, ascending.
    pub fn basis(dim: usize, m: Mask) -> Self {
        assert!(mask::fits(m, dim), "mask {m:#b} exceeds dimension {dim}");
        let mut f = Self::zero(dim);
        f.insert(m, PolyScalar::one(dim));
        f
    }

    /// `coeff · dx^I`.
    pub fn term(m: Mask, coeff: PolyScalar) -> Self {
        let dim = coeff.num_vars();
        assert!(mask::fits(m, dim), "mask {m:#b} exceeds dimension {dim}");
        let mut f = Self::zero(dim);
        f.insert(m, coeff);
        f
    }

    pub fn from_components<I: IntoIterator<Item = (Mask, PolyScalar)>>(dim: usize, it: I) -> Self {
        let mut f = Self::zero(dim);
        for (m, p) in it {
            assert!(mask::fits(m, dim), "mask {m:#b} exceeds dimension {dim}");
            f.add_term(m, &p);
        }
        f
    }

    fn insert(&mut self, m: Mask, p: PolyScalar) {
        if !p.is_zero() {
            self.comps.insert(m, p);
        }
    }

    /// Accumulates `p · dx^m` in place.
    pub(crate) fn add_term(&mut self, m: Mask, p: &PolyScalar) {
        if p.is_zero() {
            return;
        }
        match self.comps.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + p;
                if sum.is_zero() {
                    self.comps.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.comps.insert(m, p.clone());
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (Mask, &PolyScalar)> {
        self.comps.iter().map(|(m, p)| (*m, p))
    }

    pub fn coefficient(&self, m: Mask) -> Option<&PolyScalar> {
        self.comps.get(&m)
    }

    pub fn num_terms(&self) -> usize {
        self.comps.values().map(PolyScalar::len).sum()
    }

    /// The single degree of a nonzero homogeneous form; `None` if zero or mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.comps.keys().map(|m| mask::degree(*m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True if every component has degree `k` (vacuously for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.comps.keys().all(|m| mask::degree(*m) == k)
    }

    pub fn part_of_degree(&self, k: usize) -> Self {
        Self {
            dim: self.dim,
            comps: self
                .comps
                .iter()
                .filter(|(m, _)| mask::degree(**m) == k)
                .map(|(m, p)| (*m, p.clone()))
                .collect(),
        }
    }

    pub(crate) fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch { left: self.dim, right: other });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut out = self.clone();
        for (m, p) in &other.comps {
            out.add_term(*m, p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("form dimension mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, comps: self.comps.iter().map(|(m, p)| (*m, -p)).collect() }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, comps: self.comps.iter().map(|(m, p)| (*m, p.scale(c))).collect() }
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn mul_function(&self, f: &PolyScalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, p) in &self.comps {
            out.insert(*m, p * f);
        }
        out
    }

    /// Exterior product, graded commutative.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut out = Self::zero(self.dim);
        for (ma, pa) in &self.comps {
            for (mb, pb) in &other.comps {
                if let Some((m, negative)) = mask::wedge(*ma, *mb) {
                    let prod = pa * pb;
                    if negative {
                        out.add_term(m, &-&prod);
                    } else {
                        out.add_term(m, &prod);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Contraction with the coordinate vector field `∂_a`.
    pub fn interior_coordinate(&self, a: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, p) in &self.comps {
            if let Some((rest, negative)) = mask::remove(*m, a) {
                if negative {
                    out.add_term(rest, &-p);
                } else {
                    out.add_term(rest, p);
                }
            }
        }
        out
    }

    /// Exterior derivative in coordinates.
    pub fn exterior_d(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, p) in &self.comps {
            for a in 0..self.dim {
                if m & mask::single(a) != 0 {
                    continue;
                }
                let da = p.partial_derivative(a).expect("axis within dimension");
                if da.is_zero() {
                    continue;
                }
                let (target, negative) = mask::wedge(mask::single(a), *m).expect("disjoint");
                if negative {
                    out.add_term(target, &-&da);
                } else {
                    out.add_term(target, &da);
                }
            }
        }
        out
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Self {
        Self { dim: self.dim, comps: self.comps.iter().map(|(m, p)| (*m, p.conj())).collect() }
    }
}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, p)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == 0 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p}) {}", mask::display(*m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIM: usize = 4;

    fn x(a: usize) -> PolyScalar {
        PolyScalar::var(DIM, a).unwrap()
    }

    fn dx(a: usize) -> ScalarForm {
        ScalarForm::dx(DIM, a).unwrap()
    }

    #[test]
    fn wedge_of_basis() {
        assert_eq!(dx(0).wedge(&dx(1)).unwrap(), ScalarForm::basis(DIM, 0b11));
        assert!(dx(0).wedge(&dx(0)).unwrap().is_zero());
        assert_eq!(dx(1).wedge(&dx(0)).unwrap(), ScalarForm::basis(DIM, 0b11).neg());
    }

    #[test]
    fn wedge_expansion() {
        // (x1 dx1) ∧ (x2 dx2 + dx3) = x1 x2 dx1∧dx2 + x1 dx1∧dx3
        let a = dx(0).mul_function(&x(0));
        let b = dx(1).mul_function(&x(1)).add(&dx(2));
        let expected = ScalarForm::term(0b011, &x(0) * &x(1)).add(&ScalarForm::term(0b101, x(0)));
        assert_eq!(a.wedge(&b).unwrap(), expected);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        let a = ScalarForm::dx(2, 0).unwrap();
        assert!(matches!(a.wedge(&dx(0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn interior_coordinate_of_basis() {
        let vol = ScalarForm::basis(DIM, 0b11);
        assert_eq!(vol.interior_coordinate(0), dx(1));
        assert_eq!(vol.interior_coordinate(1), dx(0).neg());
    }

    #[test]
    fn d_of_x1_dx2() {
        let a = dx(1).mul_function(&x(0));
        assert_eq!(a.exterior_d(), ScalarForm::basis(DIM, 0b11));
    }

    #[test]
    fn degree_queries() {
        let mixed = dx(0).add(&ScalarForm::function(x(1)));
        assert_eq!(mixed.degree(), None);
        assert_eq!(dx(0).degree(), Some(1));
        assert!(ScalarForm::zero(DIM).is_homogeneous_of(3));
        assert_eq!(mixed.part_of_degree(0), ScalarForm::function(x(1)));
    }
}
