//! Dense matrices over an exact field and the elimination kernel.
//!
//! Elimination always pivots on the first nonzero entry of a column, so every
//! result (echelon forms, kernel bases, particular solutions) is a
//! deterministic function of the input.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Field;
use crate::poly::UniPoly;
use crate::subspace::{Coordinates, SubspaceBasis};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: F, n: usize, c: F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Elementary matrix `e_{i,j}` (zero-based indices).
    pub fn unit(field: F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m[(i, j)] = field.one();
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(field: F, diag: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Companion matrix of a monic polynomial of degree `n >= 1`: ones on the
    /// subdiagonal, negated coefficients in the last column.
    pub fn companion(poly: &UniPoly<F>) -> Self {
        let f = poly.field();
        assert!(poly.is_monic(), "companion matrix needs a monic polynomial");
        let n = poly.degree().unwrap();
        let mut m = Self::zeros(f, n, n);
        for i in 1..n {
            m[(i, i - 1)] = f.one();
        }
        for i in 0..n {
            m[(i, n - 1)] = f.neg(&poly.coeff(i));
        }
        m
    }

    /// Nilpotent Jordan block with ones on the superdiagonal.
    pub fn jordan_nilpotent(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = field.one();
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "shape mismatch in add");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "shape mismatch in sub");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, &other.data[l * other.cols + j]));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> F::Elem {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, &self[(i, i)]))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut b = Self::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, len: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rref(&self) -> Rref<F> {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(&m[(r, c)]).unwrap();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let sub = f.mul(&factor, &m.data[r * m.cols + j]);
                    let idx = i * m.cols + j;
                    m.data[idx] = f.sub(&m.data[idx], &sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel `{v : M v = 0}` as a row-reduced basis; one vector per free
    /// column, free entry one and the other free entries zero.
    pub fn kernel_basis(&self) -> SubspaceBasis<F> {
        let f = self.field;
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&r[(row, free)]);
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(f, self.cols, vectors, Coordinates::Raw)
    }

    /// A particular solution of `M x = rhs` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, v) in rhs.iter().enumerate() {
            aug[(i, self.cols)] = v.clone();
        }
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> F::Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(&m[(i, c)])) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(&det);
            }
            let piv = m[(c, c)].clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                if f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = f.mul(&m[(i, c)], &inv);
                for j in c..n {
                    let sub = f.mul(&factor, &m[(c, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let f = self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(f, n));
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Characteristic polynomial `det(xI - M)` by the division-free
    /// Samuelson-Berkowitz recursion on leading principal submatrices.
    pub fn charpoly(&self) -> UniPoly<F> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        // coefficient vector, highest degree first, for the trailing k x k block
        let mut vect = vec![f.one()];
        for start in (0..n).rev() {
            let size = n - start;
            let a = self[(start, start)].clone();
            let sub = self.block(start + 1, start + 1, size - 1, size - 1);
            let row: Vec<F::Elem> = (start + 1..n).map(|j| self[(start, j)].clone()).collect();
            let mut col: Vec<F::Elem> = (start + 1..n).map(|i| self[(i, start)].clone()).collect();
            // toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{size-2} C
            let mut items = vec![f.one(), f.neg(&a)];
            for _ in 0..size.saturating_sub(1) {
                let rc = row
                    .iter()
                    .zip(&col)
                    .fold(f.zero(), |acc, (r, c)| f.add(&acc, &f.mul(r, c)));
                items.push(f.neg(&rc));
                col = sub.mul_vec(&col);
            }
            let mut next = vec![f.zero(); size + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, v) in vect.iter().enumerate() {
                    if i >= j {
                        *slot = f.add(slot, &f.mul(&items[i - j], v));
                    }
                }
            }
            vect = next;
        }
        vect.reverse();
        UniPoly::new(f, vect)
    }

    /// Minimal polynomial and `dim F[M]` (= its degree), from the first
    /// linear dependency among `I, M, M^2, ...`.
    pub fn minpoly(&self) -> (UniPoly<F>, usize) {
        assert!(self.is_square(), "minpoly of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut powers: Vec<Vec<F::Elem>> = vec![Self::identity(f, n).data];
        let mut current = Self::identity(f, n);
        loop {
            current = current.mul(self);
            powers.push(current.data.clone());
            let system = Self::from_columns(f, n * n, &powers);
            let kernel = system.kernel_basis();
            if let Some(v) = kernel.vectors().first() {
                let d = powers.len() - 1;
                let lead = f.inv(&v[d]).expect("first dependency involves the top power");
                let p = UniPoly::new(f, v.iter().map(|c| f.mul(c, &lead)).collect());
                return (p, d);
            }
        }
    }

    pub fn display_rows(&self) -> String {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| f.format_elem(v))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_rows())
    }
}
