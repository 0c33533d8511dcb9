//! A generic unital algebra for testing conjugation formulas: square
//! matrices over the Gaussian rationals.

use std::fmt;

use rand::Rng;

use crate::algebra::{GaussRational, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    size: usize,
    entries: Vec<GaussRational>,
}

impl AlgebraElement {
    pub fn zero(size: usize) -> Self {
        Self { size, entries: vec![GaussRational::ZERO; size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.entries[i * size + i] = GaussRational::ONE;
        }
        m
    }

    /// The matrix unit `E_{ij}` (0-based).
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(size);
        m.entries[i * size + j] = GaussRational::ONE;
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Shape { expected: size, rows: size, cols: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRational::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch { left: self.size, right: other.size });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { size: self.size, entries })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrix size mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GaussRational::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix size mismatch")
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self { size: self.size, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.checked_mul(other)?.sub(&other.mul(self)))
    }

    /// Least `N ≥ 1` with `self^N = 0`, searched up to the size.
    pub fn nilpotency_order(&self) -> Option<usize> {
        let mut power = self.clone();
        for k in 1..=self.size {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }

    /// `e^x` for nilpotent `x`, as a finite series.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let order = self.nilpotency_order().ok_or(Error::NotNilpotent { bound: self.size })?;
        let mut acc = Self::identity(self.size);
        let mut term = Self::identity(self.size);
        for k in 1..order {
            term = term.mul(self).scale(&GaussRational::ratio(1, k as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Entries drawn from `{-3/1 .. 3/1} / {1, 2, 3}` in both parts.
    pub fn random<R: Rng>(rng: &mut R, size: usize) -> Self {
        let draw = |rng: &mut R| Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let entries = (0..size * size).map(|_| GaussRational::new(draw(rng), draw(rng))).collect();
        Self { size, entries }
    }

    /// A random strictly upper triangular matrix.
    pub fn random_strictly_upper<R: Rng>(rng: &mut R, size: usize) -> Self {
        let mut m = Self::random(rng, size);
        for i in 0..size {
            for j in 0..=i {
                m.entries[i * size + j] = GaussRational::ZERO;
            }
        }
        m
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.size)
            .map(|i| {
                let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `[..[[x, y], y].., y]` with `k` brackets; `k = 0` gives `x`.
pub fn algebra_iterated_bracket(x: &AlgebraElement, y: &AlgebraElement, k: usize) -> Result<AlgebraElement> {
    let mut acc = x.clone();
    for _ in 0..k {
        acc = acc.commutator(y)?;
    }
    Ok(acc)
}

/// Least `k` with `[x, y]^{(k)} = 0`, searched up to `2·size - 1`.
pub fn commutable_degree(x: &AlgebraElement, y: &AlgebraElement) -> Result<usize> {
    x.check(y)?;
    let bound = 2 * x.size.max(1) - 1;
    let mut acc = x.clone();
    for k in 0..=bound {
        if acc.is_zero() {
            return Ok(k);
        }
        acc = acc.commutator(y)?;
    }
    Err(Error::CommutableBound { bound })
}

/// `Σ_{i<k} [x, y]^{(i)} / i!` with `k` the commutable degree.
pub fn conjugation_closed_form(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if y.nilpotency_order().is_none() {
        return Err(Error::NotNilpotent { bound: y.size });
    }
    let k = commutable_degree(x, y)?;
    let mut acc = AlgebraElement::zero(x.size);
    let mut term = x.clone();
    let mut factorial = 1i64;
    for i in 0..k {
        if i > 0 {
            term = term.commutator(y)?;
            factorial *= i as i64;
        }
        acc = acc.add(&term.scale(&GaussRational::ratio(1, factorial)));
    }
    Ok(acc)
}

/// `e^{-y} e^x e^y` computed as `e^{Σ}` with `Σ` the conjugated element;
/// also checks that `Σ^N = 0` where `x^N = 0`.
pub fn conjugated_exponential(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let n = x.nilpotency_order().ok_or(Error::NotNilpotent { bound: x.size })?;
    let sigma = conjugation_closed_form(x, y)?;
    let mut power = AlgebraElement::identity(x.size);
    for _ in 0..n {
        power = power.mul(&sigma);
    }
    if !power.is_zero() {
        return Err(Error::NotNilpotent { bound: n });
    }
    sigma.exp_nilpotent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::random::rng_from_seed;

    #[test]
    fn elementary_example() {
        let x = AlgebraElement::unit(2, 0, 0);
        let y = AlgebraElement::unit(2, 0, 1);
        assert_eq!(algebra_iterated_bracket(&x, &y, 0).unwrap(), x);
        assert_eq!(algebra_iterated_bracket(&x, &y, 1).unwrap(), y);
        assert!(algebra_iterated_bracket(&x, &y, 2).unwrap().is_zero());
        assert_eq!(commutable_degree(&x, &y).unwrap(), 2);
        let closed = conjugation_closed_form(&x, &y).unwrap();
        assert_eq!(closed, x.add(&y));
        let direct = AlgebraElement::identity(2).sub(&y).mul(&x).mul(&AlgebraElement::identity(2).add(&y));
        assert_eq!(closed, direct);
    }

    #[test]
    fn commuting_pair() {
        let x = AlgebraElement::identity(3).scale(&GaussRational::from_int(2));
        let mut rng = rng_from_seed(1);
        let y = AlgebraElement::random_strictly_upper(&mut rng, 3);
        assert_eq!(commutable_degree(&x, &y).unwrap(), 1);
        assert_eq!(conjugation_closed_form(&x, &AlgebraElement::zero(3)).unwrap(), x);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let x = AlgebraElement::unit(2, 0, 0);
        let y = AlgebraElement::identity(2);
        assert!(matches!(conjugation_closed_form(&x, &y), Err(Error::NotNilpotent { .. })));
        assert!(matches!(x.exp_nilpotent(), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn unbounded_commutable_degree_is_an_error() {
        // ad_y has eigenvalue 2 on E_12 for y = diag(1, -1)
        let y = AlgebraElement::from_rows(vec![
            vec![GaussRational::ONE, GaussRational::ZERO],
            vec![GaussRational::ZERO, GaussRational::from_int(-1)],
        ])
        .unwrap();
        let x = AlgebraElement::unit(2, 0, 1);
        assert!(matches!(commutable_degree(&x, &y), Err(Error::CommutableBound { bound: 3 })));
    }

    #[test]
    fn exponential_of_zero_y() {
        let mut rng = rng_from_seed(4);
        let x = AlgebraElement::random_strictly_upper(&mut rng, 3);
        assert_eq!(conjugated_exponential(&x, &AlgebraElement::zero(3)).unwrap(), x.exp_nilpotent().unwrap());
    }
}
