//! Dense univariate polynomials over an exact field.

use std::fmt;

use crate::field::Field;
use crate::matrix::Matrix;

/// Polynomial with coefficients stored lowest degree first. The zero
/// polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(field: F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `x - a`.
    pub fn linear_root(field: F, a: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.neg(a)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f,
            (0..len).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops every coefficient of degree above `k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().take(k + 1).cloned().collect())
    }

    /// Product truncated modulo `x^{k+1}`.
    pub fn mul_trunc(&self, other: &Self, k: usize) -> Self {
        self.mul(other).truncate(k)
    }

    /// Inverse modulo `x^{k+1}`; `None` when the constant term vanishes.
    pub fn inverse_trunc(&self, k: usize) -> Option<Self> {
        let f = self.field;
        let c0inv = f.inv(&self.coeff(0))?;
        let mut inv = vec![f.zero(); k + 1];
        inv[0] = c0inv.clone();
        for s in 1..=k {
            let mut acc = f.zero();
            for i in 1..=s {
                acc = f.add(&acc, &f.mul(&self.coeff(i), &inv[s - i]));
            }
            inv[s] = f.neg(&f.mul(&acc, &c0inv));
        }
        Some(Self::new(f, inv))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(&lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let f = self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::scalar(f, n, c.clone()));
        }
        acc
    }

    /// Product of the distinct monic irreducible factors. Correct in every
    /// characteristic: factors whose multiplicity is divisible by `p` are
    /// recovered through the `p`-th root.
    pub fn radical(&self) -> Self {
        assert!(!self.is_zero(), "radical of the zero polynomial");
        let f = self.field;
        if self.is_constant() {
            return Self::one(f);
        }
        let m = self.monic();
        let d = m.derivative();
        if d.is_zero() {
            return m.pth_root().radical();
        }
        let g = m.gcd(&d);
        let w = m.div_exact(&g).unwrap().monic();
        let mut h = m;
        loop {
            let c = h.gcd(&w);
            if c.is_constant() {
                break;
            }
            h = h.div_exact(&c).unwrap();
        }
        if h.is_constant() {
            w
        } else {
            w.mul(&h.pth_root().radical()).monic()
        }
    }

    /// For `g(x^p)` over `F_p`, returns the polynomial whose `p`-th power is it.
    /// Uses `a^p = a` in the prime field.
    fn pth_root(&self) -> Self {
        let p = self.field.characteristic() as usize;
        assert!(p > 0, "p-th root requested in characteristic zero");
        let coeffs = self.coeffs.iter().step_by(p).cloned().collect();
        Self::new(self.field, coeffs)
    }

    /// Number of distinct roots over an algebraic closure.
    pub fn distinct_root_count_closure(&self) -> usize {
        self.radical().degree().unwrap_or(0)
    }

    pub fn display_var(&self, var: &str) -> String {
        let f = self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format_signed(c);
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    match cs.as_str() {
                        "1" => mono,
                        "-1" => format!("-{mono}"),
                        _ => format!("{cs}*{mono}"),
                    }
                }
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("x"))
    }
}

/// Summary used by spectrum tests: squarefreeness (gcd with the derivative is
/// constant) and the number of distinct roots in the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitInfo {
    pub is_squarefree: bool,
    pub distinct_base_roots: usize,
}

pub fn squarefree_split_info<F: Field>(p: &UniPoly<F>) -> SplitInfo {
    assert!(!p.is_zero(), "split info of the zero polynomial");
    let is_squarefree = p.gcd(&p.derivative()).is_constant();
    let distinct_base_roots = p.field().base_roots(p).len();
    SplitInfo { is_squarefree, distinct_base_roots }
}
