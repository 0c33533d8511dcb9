//! A single coordinate chart `ℝ^{2n}` with a polynomial almost complex
//! structure `J`.
//!
//! Matrices act on column vectors of components against `∂_1 … ∂_{2n}`:
//! `J ∂_b = Σ_a J[a][b] ∂_a`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{GaussRational, PolyScalar, MAX_VARS};
use crate::forms::{mask, Mask, ScalarForm, VectorForm};
use crate::{Error, Result};

/// Square matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    num_vars: usize,
    entries: Vec<PolyScalar>,
}

impl PolyMatrix {
    pub fn zero(size: usize, num_vars: usize) -> Self {
        Self { size, num_vars, entries: vec![PolyScalar::zero(num_vars); size * size] }
    }

    pub fn identity(size: usize, num_vars: usize) -> Self {
        let mut m = Self::zero(size, num_vars);
        for i in 0..size {
            m.set(i, i, PolyScalar::one(num_vars));
        }
        m
    }

    /// Builds from rows; every entry must use `num_vars` variables.
    pub fn from_rows(rows: Vec<Vec<PolyScalar>>, num_vars: usize) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Shape { expected: size, rows: size, cols: row.len() });
            }
            for p in row {
                if p.num_vars() != num_vars {
                    return Err(Error::VarCountMismatch { left: num_vars, right: p.num_vars() });
                }
                entries.push(p);
            }
        }
        Ok(Self { size, num_vars, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, row: usize, col: usize) -> &PolyScalar {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: PolyScalar) {
        assert_eq!(p.num_vars(), self.num_vars);
        self.entries[row * self.size + col] = p;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(n, self.num_vars);
        for i in 0..n {
            for j in 0..n {
                let mut acc = PolyScalar::zero(self.num_vars);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            num_vars: self.num_vars,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self {
            size: self.size,
            num_vars: self.num_vars,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRational::from_int(-1))
    }

    pub fn conj(&self) -> Self {
        Self {
            size: self.size,
            num_vars: self.num_vars,
            entries: self.entries.iter().map(PolyScalar::conj).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PolyScalar::is_zero)
    }

    /// First nonzero entry on or below the diagonal.
    fn first_non_strict_upper(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).is_zero())
    }
}

/// `(P10, P01)`: the projections of `T_ℂ` onto `T^{1,0}` and `T^{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectors {
    pub p10: PolyMatrix,
    pub p01: PolyMatrix,
}

/// How a builtin chart was built, for reports and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartSpec {
    Standard(usize),
    Twisted(usize),
}

impl ChartSpec {
    pub fn complex_dim(self) -> usize {
        match self {
            ChartSpec::Standard(n) | ChartSpec::Twisted(n) => n,
        }
    }

    pub fn build(self) -> Result<Chart> {
        match self {
            ChartSpec::Standard(n) => Chart::standard(n),
            ChartSpec::Twisted(n) => Chart::twisted_builtin(n),
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartSpec::Standard(n) => write!(f, "standard:{n}"),
            ChartSpec::Twisted(n) => write!(f, "twisted:{n}"),
        }
    }
}

impl FromStr for ChartSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s.split_once(':').ok_or_else(|| Error::UnknownChart(s.to_string()))?;
        let n: usize = n.trim().parse().map_err(|_| Error::UnknownChart(s.to_string()))?;
        if n == 0 || 2 * n > MAX_VARS {
            return Err(Error::InvalidDimension { got: n, max: MAX_VARS / 2 });
        }
        match kind.trim() {
            "standard" => Ok(ChartSpec::Standard(n)),
            "twisted" => Ok(ChartSpec::Twisted(n)),
            _ => Err(Error::UnknownChart(s.to_string())),
        }
    }
}

/// A chart with almost complex structure `J`, `J² = -I` identically.
#[derive(Clone, Debug)]
pub struct Chart {
    n: usize,
    j: PolyMatrix,
    projectors: Projectors,
    /// For each basis mask `I` of degree `k`, the pieces `Π^{p,k-p} dx^I`, `p = 0..=k`.
    basis_split: Vec<Vec<ScalarForm>>,
    label: String,
}

impl Chart {
    /// Constant structure `J₀ ∂_{2i-1} = ∂_{2i}`, `J₀ ∂_{2i} = -∂_{2i-1}`.
    pub fn standard(n: usize) -> Result<Self> {
        check_complex_dim(n)?;
        Self::from_j(n, standard_j(n), format!("standard:{n}"))
    }

    /// `J = (I + N) J₀ (I + N)^{-1}` for a strictly upper-triangular `N`.
    pub fn twisted(n: usize, twist: &PolyMatrix) -> Result<Self> {
        check_complex_dim(n)?;
        let dim = 2 * n;
        if twist.size() != dim {
            return Err(Error::Shape { expected: dim, rows: twist.size(), cols: twist.size() });
        }
        if twist.num_vars() != dim {
            return Err(Error::VarCountMismatch { left: dim, right: twist.num_vars() });
        }
        if let Some((row, col)) = twist.first_non_strict_upper() {
            return Err(Error::NotStrictlyTriangular { row, col });
        }
        let id = PolyMatrix::identity(dim, dim);
        let a = id.add(twist);
        // (I + N)^{-1} = Σ (-N)^k, finite because N is nilpotent
        let minus_n = twist.neg();
        let mut inv = id.clone();
        let mut power = id;
        for _ in 1..dim {
            power = power.mul(&minus_n);
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power);
        }
        let j = a.mul(&standard_j(n)).mul(&inv);
        Self::from_j(n, j, format!("twisted:{n}"))
    }

    /// The pinned non-integrable example: `N = x_1 E_{1,3}` (one-based).
    /// For `n = 1` every almost complex structure is integrable; the twist
    /// `N = x_2 E_{1,2}` is used there.
    pub fn twisted_builtin(n: usize) -> Result<Self> {
        check_complex_dim(n)?;
        let twist = builtin_twist(n);
        Self::twisted(n, &twist)
    }

    /// Validates `J² = -I` and precomputes projectors.
    pub fn from_j(n: usize, j: PolyMatrix, label: String) -> Result<Self> {
        check_complex_dim(n)?;
        let dim = 2 * n;
        if j.size() != dim || j.num_vars() != dim {
            return Err(Error::Shape { expected: dim, rows: j.size(), cols: j.size() });
        }
        let id = PolyMatrix::identity(dim, dim);
        if j.mul(&j) != id.neg() {
            return Err(Error::NotAlmostComplex);
        }
        let i_j = j.scale(&GaussRational::I);
        let half = GaussRational::ratio(1, 2);
        let p10 = id.add(&i_j.neg()).scale(&half);
        let p01 = id.add(&i_j).scale(&half);
        let projectors = Projectors { p10, p01 };
        let basis_split = split_basis(dim, &projectors);
        Ok(Self { n, j, projectors, basis_split, label })
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn j(&self) -> &PolyMatrix {
        &self.j
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn projectors(&self) -> &Projectors {
        &self.projectors
    }

    /// `J` viewed as the vector 1-form `Σ J[a][b] dx^b ⊗ ∂_a`.
    pub fn j_form(&self) -> VectorForm {
        matrix_as_vector_form(&self.j)
    }

    /// `Π^{p,q}` applied to the degree-`(p+q)` part of `alpha`.
    pub fn project(&self, alpha: &ScalarForm, p: usize, q: usize) -> ScalarForm {
        let dim = self.dim();
        let mut out = ScalarForm::zero(dim);
        if p + q > dim {
            return out;
        }
        for (m, coeff) in alpha.components() {
            if mask::degree(m) != p + q {
                continue;
            }
            let piece = &self.basis_split[m as usize][p];
            for (pm, pc) in piece.components() {
                out.add_term(pm, &(coeff * pc));
            }
        }
        out
    }

    /// `Π^{p,q}` where negative indices give zero.
    pub fn project_signed(&self, alpha: &ScalarForm, p: i32, q: i32) -> ScalarForm {
        if p < 0 || q < 0 {
            return ScalarForm::zero(self.dim());
        }
        self.project(alpha, p as usize, q as usize)
    }

    /// The torsion `θ ∈ A^{2,0}(T^{0,1})`, `θ(∂_a, ∂_b) = P01 [P10 ∂_a, P10 ∂_b]`.
    pub fn torsion_form(&self) -> VectorForm {
        let dim = self.dim();
        let columns: Vec<Vec<PolyScalar>> = (0..dim)
            .map(|b| (0..dim).map(|a| self.projectors.p10.get(a, b).clone()).collect())
            .collect();
        let mut comps = vec![ScalarForm::zero(dim); dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let bracket = lie_bracket(&columns[a], &columns[b]);
                let m = mask::single(a) | mask::single(b);
                for (c, comp) in comps.iter_mut().enumerate() {
                    let mut value = PolyScalar::zero(dim);
                    for (e, be) in bracket.iter().enumerate() {
                        value = &value + &(self.projectors.p01.get(c, e) * be);
                    }
                    comp.add_term(m, &value);
                }
            }
        }
        VectorForm::new(2, comps).expect("torsion components are 2-forms")
    }

    /// The Nijenhuis tensor `[J, J]` (Frölicher–Nijenhuis bracket).
    pub fn nijenhuis_tensor(&self) -> VectorForm {
        let j = self.j_form();
        j.fn_bracket(&j).expect("same chart")
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn check_complex_dim(n: usize) -> Result<()> {
    if n == 0 || 2 * n > MAX_VARS {
        return Err(Error::InvalidDimension { got: n, max: MAX_VARS / 2 });
    }
    Ok(())
}

pub fn standard_j(n: usize) -> PolyMatrix {
    let dim = 2 * n;
    let mut j = PolyMatrix::zero(dim, dim);
    for i in 0..n {
        j.set(2 * i + 1, 2 * i, PolyScalar::one(dim));
        j.set(2 * i, 2 * i + 1, PolyScalar::constant(dim, GaussRational::from_int(-1)));
    }
    j
}

fn builtin_twist(n: usize) -> PolyMatrix {
    let dim = 2 * n;
    let mut twist = PolyMatrix::zero(dim, dim);
    if n == 1 {
        twist.set(0, 1, PolyScalar::var(dim, 1).expect("dim 2"));
    } else {
        twist.set(0, 2, PolyScalar::var(dim, 0).expect("dim >= 4"));
    }
    twist
}

/// `M` as the vector 1-form `Σ_{a,b} M[a][b] dx^b ⊗ ∂_a`.
pub fn matrix_as_vector_form(m: &PolyMatrix) -> VectorForm {
    let dim = m.size();
    let comps = (0..dim)
        .map(|a| {
            ScalarForm::from_components(dim, (0..dim).map(|b| (mask::single(b), m.get(a, b).clone())))
        })
        .collect();
    VectorForm::new(1, comps).expect("1-form components")
}

/// Lie bracket of polynomial vector fields given by components.
pub fn lie_bracket(x: &[PolyScalar], y: &[PolyScalar]) -> Vec<PolyScalar> {
    let dim = x.len();
    (0..dim)
        .map(|c| {
            let mut acc = PolyScalar::zero(dim);
            for e in 0..dim {
                if !x[e].is_zero() {
                    acc = &acc + &(&x[e] * &y[c].partial_derivative(e).expect("axis"));
                }
                if !y[e].is_zero() {
                    acc = &acc - &(&y[e] * &x[c].partial_derivative(e).expect("axis"));
                }
            }
            acc
        })
        .collect()
}

/// Expands `dx^{i1} ∧ … ∧ dx^{ik}` with `dx^i = Π^{1,0}dx^i + Π^{0,1}dx^i`
/// and groups by the number of `(1,0)` factors.
fn split_basis(dim: usize, pr: &Projectors) -> Vec<Vec<ScalarForm>> {
    // Π^{1,0} dx^i = dx^i ∘ P10 = Σ_b P10[i][b] dx^b
    let row_form = |m: &PolyMatrix, i: usize| {
        ScalarForm::from_components(dim, (0..dim).map(|b| (mask::single(b), m.get(i, b).clone())))
    };
    let e10: Vec<ScalarForm> = (0..dim).map(|i| row_form(&pr.p10, i)).collect();
    let e01: Vec<ScalarForm> = (0..dim).map(|i| row_form(&pr.p01, i)).collect();
    mask::all(dim)
        .map(|m: Mask| {
            let mut pieces = vec![ScalarForm::constant(dim, GaussRational::ONE)];
            for i in mask::indices(m) {
                let mut next = vec![ScalarForm::zero(dim); pieces.len() + 1];
                for (p, piece) in pieces.iter().enumerate() {
                    next[p] = next[p].add(&piece.wedge(&e01[i]).expect("dim"));
                    next[p + 1] = next[p + 1].add(&piece.wedge(&e10[i]).expect("dim"));
                }
                pieces = next;
            }
            pieces
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(dim: usize, v: i64) -> PolyScalar {
        PolyScalar::constant(dim, GaussRational::from_int(v))
    }

    #[test]
    fn standard_n1_matrix() {
        let c = Chart::standard(1).unwrap();
        let expected =
            PolyMatrix::from_rows(vec![vec![int(2, 0), int(2, -1)], vec![int(2, 1), int(2, 0)]], 2)
                .unwrap();
        assert_eq!(c.j(), &expected);
    }

    #[test]
    fn standard_n2_is_block_diagonal() {
        let c = Chart::standard(2).unwrap();
        let j = c.j();
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (3, 1)] {
            assert!(j.get(a, b).is_zero());
        }
        assert_eq!(j.get(3, 2), &int(4, 1));
        assert_eq!(j.get(2, 3), &int(4, -1));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(Chart::standard(0), Err(Error::InvalidDimension { .. })));
        assert!(Chart::standard(5).is_err());
    }

    #[test]
    fn zero_twist_is_standard() {
        let t = Chart::twisted(2, &PolyMatrix::zero(4, 4)).unwrap();
        assert_eq!(t.j(), Chart::standard(2).unwrap().j());
    }

    #[test]
    fn lower_triangular_twist_rejected() {
        let mut n = PolyMatrix::zero(4, 4);
        n.set(2, 0, PolyScalar::var(4, 0).unwrap());
        assert!(matches!(Chart::twisted(2, &n), Err(Error::NotStrictlyTriangular { row: 2, col: 0 })));
        let mut diag = PolyMatrix::zero(4, 4);
        diag.set(1, 1, PolyScalar::one(4));
        assert!(Chart::twisted(2, &diag).is_err());
    }

    #[test]
    fn twisted_j_squares_to_minus_identity() {
        let c = Chart::twisted_builtin(2).unwrap();
        let id = PolyMatrix::identity(4, 4);
        assert_eq!(c.j().mul(c.j()), id.neg());
        assert!(!c.j().get(0, 0).is_constant() || !c.j().get(0, 3).is_constant());
    }

    #[test]
    fn non_polynomial_j_rejected() {
        let mut j = standard_j(1);
        j.set(0, 0, PolyScalar::one(2));
        assert!(matches!(Chart::from_j(1, j, "bad".into()), Err(Error::NotAlmostComplex)));
    }

    #[test]
    fn standard_n1_projector() {
        let c = Chart::standard(1).unwrap();
        let half = |re, im| PolyScalar::constant(2, GaussRational::new(
            crate::algebra::Rational::new(re, 2),
            crate::algebra::Rational::new(im, 2),
        ));
        let expected = PolyMatrix::from_rows(
            vec![vec![half(1, 0), half(0, 1)], vec![half(0, -1), half(1, 0)]],
            2,
        )
        .unwrap();
        assert_eq!(c.projectors().p10, expected);
    }

    #[test]
    fn projector_identities_hold_identically() {
        for c in [Chart::standard(2).unwrap(), Chart::twisted_builtin(2).unwrap()] {
            let Projectors { p10, p01 } = c.projectors().clone();
            let id = PolyMatrix::identity(4, 4);
            assert_eq!(p10.add(&p01), id);
            assert_eq!(p10.mul(&p10), p10);
            assert_eq!(p01.mul(&p01), p01);
            assert!(p10.mul(&p01).is_zero());
            assert!(p01.mul(&p10).is_zero());
            assert_eq!(p10.conj(), p01);
        }
    }

    #[test]
    fn standard_chart_is_integrable() {
        for n in 1..=2 {
            let c = Chart::standard(n).unwrap();
            assert!(c.nijenhuis_tensor().is_zero());
            assert!(c.torsion_form().is_zero());
        }
    }

    #[test]
    fn builtin_twist_is_not_integrable() {
        let c = Chart::twisted_builtin(2).unwrap();
        let nij = c.nijenhuis_tensor();
        let theta = c.torsion_form();
        assert!(!nij.is_zero());
        assert!(!theta.is_zero());
    }

    #[test]
    fn twisted_n1_is_integrable() {
        // every almost complex structure in real dimension two is integrable
        let c = Chart::twisted_builtin(1).unwrap();
        assert!(c.nijenhuis_tensor().is_zero());
        assert!(c.torsion_form().is_zero());
    }

    #[test]
    fn chart_spec_parsing() {
        assert_eq!("standard:2".parse::<ChartSpec>().unwrap(), ChartSpec::Standard(2));
        assert_eq!("twisted:3".parse::<ChartSpec>().unwrap(), ChartSpec::Twisted(3));
        assert!(matches!("standard:0".parse::<ChartSpec>(), Err(Error::InvalidDimension { .. })));
        assert!(matches!("flat:2".parse::<ChartSpec>(), Err(Error::UnknownChart(_))));
        assert!("standard".parse::<ChartSpec>().is_err());
    }
}
