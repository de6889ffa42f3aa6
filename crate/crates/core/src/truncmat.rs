//! The ring `M_n(F)[t]/t^(k+1)`.
//!
//! A [`MatPoly`] stores all `k + 1` coefficient matrices densely. Flattened
//! coordinates are order-major then row-major: entry `(i, j)` of `A_s` sits
//! at index `s n^2 + i n + j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::UniPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatPoly<F: Field> {
    field: F,
    n: usize,
    coeffs: Vec<Matrix<F>>,
}

/// The affine moves `A + p I`, `B + p I`, `B + p A` and `A (1 + q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    ShiftA,
    ShiftB,
    ShearB,
    ScaleA,
}

impl<F: Field> MatPoly<F> {
    pub fn from_coeffs(coeffs: Vec<Matrix<F>>) -> Self {
        assert!(!coeffs.is_empty(), "a matrix polynomial needs at least one coefficient");
        let field = coeffs[0].field();
        let n = coeffs[0].rows();
        for c in &coeffs {
            assert!(c.rows() == n && c.cols() == n, "coefficients must all be n x n");
        }
        MatPoly { field, n, coeffs }
    }

    pub fn zero(field: F, n: usize, k: usize) -> Self {
        MatPoly { field, n, coeffs: vec![Matrix::zeros(field, n, n); k + 1] }
    }

    pub fn identity(field: F, n: usize, k: usize) -> Self {
        Self::constant(Matrix::identity(field, n), k)
    }

    pub fn constant(m: Matrix<F>, k: usize) -> Self {
        let field = m.field();
        let n = m.rows();
        let mut out = Self::zero(field, n, k);
        out.coeffs[0] = m;
        out
    }

    /// The element `t` itself (`t I`).
    pub fn t(field: F, n: usize, k: usize) -> Self {
        let mut out = Self::zero(field, n, k);
        if k >= 1 {
            out.coeffs[1] = Matrix::identity(field, n);
        }
        out
    }

    /// `p(t) I`, dropping terms above `t^k`.
    pub fn scalar_poly(p: &UniPoly<F>, n: usize, k: usize) -> Self {
        let field = p.field();
        let mut out = Self::zero(field, n, k);
        for (s, c) in p.coeffs().iter().enumerate().take(k + 1) {
            out.coeffs[s] = Matrix::scalar(field, n, c.clone());
        }
        out
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Matrix<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &Matrix<F> {
        &self.coeffs[s]
    }

    pub fn coeff_mut(&mut self, s: usize) -> &mut Matrix<F> {
        &mut self.coeffs[s]
    }

    pub fn set_coeff(&mut self, s: usize, m: Matrix<F>) {
        assert!(m.rows() == self.n && m.cols() == self.n, "coefficient shape mismatch");
        self.coeffs[s] = m;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Matrix::is_zero)
    }

    /// Entry `(i, j)` as a truncated scalar polynomial in `t`.
    pub fn entry_poly(&self, i: usize, j: usize) -> UniPoly<F> {
        UniPoly::new(self.field, self.coeffs.iter().map(|m| m[(i, j)].clone()).collect())
    }

    pub fn set_entry_poly(&mut self, i: usize, j: usize, p: &UniPoly<F>) {
        for (s, m) in self.coeffs.iter_mut().enumerate() {
            m[(i, j)] = p.coeff(s);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.k() != other.k() || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "(n={}, k={}) vs (n={}, k={})",
                self.n,
                self.k(),
                other.n,
                other.k()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, Matrix::add))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, Matrix::sub))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let k = self.k();
        let mut out = Self::zero(self.field, self.n, k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(k + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn try_commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.try_mul(other)?.sub(&other.try_mul(self)?))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        MatPoly {
            field: self.field,
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// Panics on shape mismatch; see [`MatPoly::try_add`].
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix polynomial add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix polynomial sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix polynomial mul")
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.try_commutator(other).expect("matrix polynomial commutator")
    }

    pub fn neg(&self) -> Self {
        self.map(Matrix::neg)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|m| m.scale(c))
    }

    pub fn map(&self, op: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        MatPoly { field: self.field, n: self.n, coeffs: self.coeffs.iter().map(op).collect() }
    }

    /// `H A H^{-1}` coefficientwise.
    pub fn conjugate(&self, h: &Matrix<F>, h_inv: &Matrix<F>) -> Self {
        self.map(|m| h.mul(m).mul(h_inv))
    }

    /// Multiplies by a truncated scalar series `p(t)`.
    pub fn mul_scalar_poly(&self, p: &UniPoly<F>) -> Self {
        self.mul(&Self::scalar_poly(p, self.n, self.k()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.field, self.n, self.k());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `t^s A`.
    pub fn shift_up(&self, s: usize) -> Self {
        let k = self.k();
        let mut out = Self::zero(self.field, self.n, k);
        for i in 0..=k {
            if i + s <= k {
                out.coeffs[i + s] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// `A_r + A_{r+1} t + ... + A_k t^(k-r)`, padded with zeros to order `k`.
    pub fn shift_down(&self, r: usize) -> Self {
        let k = self.k();
        let mut out = Self::zero(self.field, self.n, k);
        for i in r..=k {
            out.coeffs[i - r] = self.coeffs[i].clone();
        }
        out
    }

    /// `q(A)` in the truncated ring (Horner).
    pub fn eval_poly(q: &UniPoly<F>, a: &Self) -> Self {
        let mut out = Self::zero(a.field, a.n, a.k());
        for c in q.coeffs().iter().rev() {
            out = out.mul(a).add(&Self::constant(Matrix::scalar(a.field, a.n, c.clone()), a.k()));
        }
        out
    }

    /// Least `s` with `A_s != 0`, `None` for the zero element.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|m| !m.is_zero())
    }

    pub fn truncate(&self, target: usize) -> Result<Self> {
        if target > self.k() {
            return Err(Error::TruncationOrder { source_order: self.k(), target });
        }
        Ok(MatPoly { field: self.field, n: self.n, coeffs: self.coeffs[..=target].to_vec() })
    }

    /// Pads with zero coefficients up to order `target`.
    pub fn extend(&self, target: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() < target + 1 {
            coeffs.push(Matrix::zeros(self.field, self.n, self.n));
        }
        MatPoly { field: self.field, n: self.n, coeffs }
    }

    /// Block upper-triangular Toeplitz matrix with `A_{j-i}` in block `(i, j)`.
    pub fn embed_toeplitz(&self) -> Matrix<F> {
        let n = self.n;
        let k = self.k();
        let mut m = Matrix::zeros(self.field, n * (k + 1), n * (k + 1));
        for i in 0..=k {
            for j in i..=k {
                m.set_block(i * n, j * n, &self.coeffs[j - i]);
            }
        }
        m
    }

    /// Reads coefficients off the first block row; `None` if `m` is not of
    /// block-Toeplitz upper-triangular form.
    pub fn from_toeplitz(m: &Matrix<F>, n: usize) -> Option<Self> {
        if n == 0 || !m.rows().is_multiple_of(n) || !m.is_square() {
            return None;
        }
        let k = m.rows() / n - 1;
        let coeffs: Vec<Matrix<F>> = (0..=k).map(|s| m.block(0, s * n, n, n)).collect();
        let out = MatPoly { field: m.field(), n, coeffs };
        (out.embed_toeplitz() == *m).then_some(out)
    }

    pub fn flatten(&self) -> Vec<F::Elem> {
        self.coeffs.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn unflatten(field: F, n: usize, k: usize, v: &[F::Elem]) -> Self {
        assert_eq!(v.len(), n * n * (k + 1), "flattened length mismatch");
        let coeffs = v.chunks(n * n).map(|c| Matrix::from_vec(field, n, n, c.to_vec())).collect();
        MatPoly { field, n, coeffs }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n * self.n * (self.k() + 1)
    }
}

/// Applies one of the polynomial moves to the pair. `p` drives the shift and
/// shear moves, `q` the scaling move (which needs `q(0) = 0`).
pub fn poly_combine<F: Field>(
    a: &MatPoly<F>,
    b: &MatPoly<F>,
    p: &UniPoly<F>,
    q: &UniPoly<F>,
    mode: CombineMode,
) -> Result<(MatPoly<F>, MatPoly<F>)> {
    a.check_compatible(b)?;
    let (n, k) = (a.n(), a.k());
    let pt = MatPoly::scalar_poly(p, n, k);
    Ok(match mode {
        CombineMode::ShiftA => (a.add(&pt), b.clone()),
        CombineMode::ShiftB => (a.clone(), b.add(&pt)),
        CombineMode::ShearB => (a.clone(), b.add(&pt.mul(a))),
        CombineMode::ScaleA => {
            if !a.field().is_zero(&q.coeff(0)) {
                return Err(Error::ScalingConstantTerm);
            }
            let one_plus_q = UniPoly::one(a.field()).add(q);
            (a.mul_scalar_poly(&one_plus_q), b.clone())
        }
    })
}

impl<F: Field> fmt::Display for MatPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, m) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{s}:")?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
