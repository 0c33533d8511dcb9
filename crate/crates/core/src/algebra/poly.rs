//! Sparse multivariate polynomials over ℚ(i).
//!
//! Monomials are packed into a `u64`, one byte of exponent per variable with
//! variable 0 in the most significant byte. Integer comparison on the packed
//! word is therefore lexicographic order, which is the canonical term order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::GaussRational;
use crate::{Error, Result};

/// Largest number of variables a packed monomial can hold.
pub const MAX_VARS: usize = 8;

const BYTE_LOW_BITS: u64 = 0x0101_0101_0101_0100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        debug_assert!(var < MAX_VARS);
        ((MAX_VARS - 1 - var) * 8) as u32
    }

    pub fn var(var: usize) -> Self {
        Monomial(1u64 << Self::shift(var))
    }

    /// Panics if an exponent exceeds 255 or more than [`MAX_VARS`] are given.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut packed = 0u64;
        for (v, &e) in exps.iter().enumerate() {
            assert!(e <= 255, "exponent {e} out of range");
            packed |= (e as u64) << Self::shift(v);
        }
        Monomial(packed)
    }

    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & 0xff) as u32
    }

    pub fn total_degree(self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    /// Exponent of `var` lowered by one; `None` when the variable is absent.
    fn lower(self, var: usize) -> Option<Monomial> {
        if self.exponent(var) == 0 {
            None
        } else {
            Some(Monomial(self.0 - (1u64 << Self::shift(var))))
        }
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    /// Product of monomials. Panics on per-variable exponent overflow.
    fn mul(self, other: Monomial) -> Monomial {
        let (s, top_carry) = self.0.overflowing_add(other.0);
        // carry into the lowest bit of a byte means the byte below overflowed
        let inner_carry = (self.0 ^ other.0 ^ s) & BYTE_LOW_BITS;
        assert!(!top_carry && inner_carry == 0, "monomial exponent overflow");
        Monomial(s)
    }
}

/// A polynomial in `num_vars` real coordinates with Gaussian-rational
/// coefficients. Terms are sorted by monomial and never carry zero
/// coefficients, so derived equality is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyScalar {
    num_vars: usize,
    terms: Vec<(Monomial, GaussRational)>,
}

impl PolyScalar {
    pub fn zero(num_vars: usize) -> Self {
        assert!(num_vars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Self { num_vars, terms: Vec::new() }
    }

    pub fn constant(num_vars: usize, c: GaussRational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, GaussRational::ONE)
    }

    /// The coordinate function `x_var` (0-based).
    pub fn var(num_vars: usize, var: usize) -> Result<Self> {
        if var >= num_vars {
            return Err(Error::AxisOutOfRange { axis: var, num_vars });
        }
        let mut p = Self::zero(num_vars);
        p.terms.push((Monomial::var(var), GaussRational::ONE));
        Ok(p)
    }

    pub fn monomial(num_vars: usize, exps: &[u32], c: GaussRational) -> Self {
        assert!(exps.len() <= num_vars, "exponent vector longer than variable count");
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.push((Monomial::from_exponents(exps), c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussRational)>,
    {
        let mut raw: Vec<_> = terms.into_iter().collect();
        Self::from_raw(num_vars, &mut raw)
    }

    fn from_raw(num_vars: usize, raw: &mut Vec<(Monomial, GaussRational)>) -> Self {
        raw.sort_unstable_by_key(|(m, _)| *m);
        let mut terms: Vec<(Monomial, GaussRational)> = Vec::with_capacity(raw.len());
        for (m, c) in raw.drain(..) {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        Self { num_vars, terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, GaussRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// The constant term.
    pub fn constant_term(&self) -> GaussRational {
        match self.terms.first() {
            Some((m, c)) if *m == Monomial::ONE => c.clone(),
            _ => GaussRational::ZERO,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: other.num_vars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { -c } else { c.clone() })));
        Self { num_vars: self.num_vars, terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num_vars);
        }
        if other.terms.len() == 1 && other.terms[0].0 == Monomial::ONE {
            return self.scale(&other.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE {
            return other.scale(&self.terms[0].1);
        }
        // Multiplying by a monomial preserves term order, so each row of the
        // product is already sorted; merge rows pairwise instead of sorting.
        let (short, long) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut rows: Vec<Self> = short
            .terms
            .iter()
            .map(|(ma, ca)| Self {
                num_vars: self.num_vars,
                terms: long.terms.iter().map(|(mb, cb)| (*ma * *mb, ca * cb)).collect(),
            })
            .collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len().div_ceil(2));
            let mut it = rows.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => a.merge(&b, false),
                    None => a,
                });
            }
            rows = next;
        }
        rows.pop().expect("nonempty product")
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Exact formal partial derivative with respect to coordinate `axis`.
    pub fn partial_derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.num_vars {
            return Err(Error::AxisOutOfRange { axis, num_vars: self.num_vars });
        }
        let mut raw: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(axis);
                m.lower(axis).map(|low| (low, c * &GaussRational::from_int(e as i64)))
            })
            .collect();
        // lowering one variable can reorder packed words, so re-canonicalize
        Ok(Self::from_raw(self.num_vars, &mut raw))
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }
}

impl<'a> Add<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    /// Panics on mismatched variable counts; see [`PolyScalar::checked_add`].
    fn add(self, rhs: &'a PolyScalar) -> PolyScalar {
        self.checked_add(rhs).expect("polynomial variable count mismatch")
    }
}

impl<'a> Sub<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &'a PolyScalar) -> PolyScalar {
        self.checked_sub(rhs).expect("polynomial variable count mismatch")
    }
}

impl<'a> Mul<&'a PolyScalar> for &'a PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &'a PolyScalar) -> PolyScalar {
        self.checked_mul(rhs).expect("polynomial variable count mismatch")
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first reads more naturally
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for v in 0..self.num_vars {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    e => factors.push(format!("x{}^{e}", v + 1)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{c}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> PolyScalar {
        PolyScalar::var(4, i).unwrap()
    }

    fn c(re: i64, im: i64) -> PolyScalar {
        PolyScalar::constant(4, GaussRational::from_ints(re, im))
    }

    #[test]
    fn additive_inverse() {
        assert!((&x(0) + &(-&x(0))).is_zero());
    }

    #[test]
    fn product_of_variables() {
        let p = &x(0) * &x(1);
        assert_eq!(p, PolyScalar::monomial(4, &[1, 1], GaussRational::ONE));
    }

    #[test]
    fn difference_of_squares_over_gaussian() {
        // (x1 + i)(x1 - i) = x1^2 + 1
        let p = &(&x(0) + &c(0, 1)) * &(&x(0) - &c(0, 1));
        let expected = &PolyScalar::monomial(4, &[2], GaussRational::ONE) + &c(1, 0);
        assert_eq!(p, expected);
    }

    #[test]
    fn partials() {
        let p = PolyScalar::monomial(4, &[2, 1], GaussRational::ONE);
        assert_eq!(
            p.partial_derivative(0).unwrap(),
            PolyScalar::monomial(4, &[1, 1], GaussRational::from_int(2))
        );
        assert!(x(0).partial_derivative(1).unwrap().is_zero());
        assert!(matches!(p.partial_derivative(4), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn conj_of_linear() {
        let p = &x(0) + &(&c(0, 1) * &x(1));
        assert_eq!(p.conj(), &x(0) - &(&c(0, 1) * &x(1)));
    }

    #[test]
    fn var_count_mismatch() {
        let a = PolyScalar::one(2);
        let b = PolyScalar::one(3);
        assert!(matches!(a.checked_add(&b), Err(Error::VarCountMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_panics() {
        let p = PolyScalar::monomial(2, &[200], GaussRational::ONE);
        let _ = &p * &p;
    }

    #[test]
    fn display_reads_naturally() {
        let p = &(&x(0) * &x(0)) + &c(-1, 0);
        assert_eq!(p.to_string(), "x1^2 + -1");
    }
}
