//! Linear subspaces of a coordinatized ambient space, kept in reduced
//! echelon form so that equality and membership are cheap exact tests.

use crate::field::Field;
use crate::matrix::Matrix;

/// Which coordinatization a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    /// Plain `F^d`.
    Raw,
    /// `n x n` matrices, row-major.
    MatrixSpace { n: usize },
    /// Truncated matrix polynomials, order-major then row-major.
    MatPolySpace { n: usize, k: usize },
}

#[derive(Clone, Debug)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ambient_dim: usize,
    vectors: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    context: Coordinates,
}

impl<F: Field> SubspaceBasis<F> {
    /// Row-reduces an arbitrary spanning family.
    pub fn from_vectors(
        field: F,
        ambient_dim: usize,
        vectors: Vec<Vec<F::Elem>>,
        context: Coordinates,
    ) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient_dim, context);
        }
        let m = Matrix::from_rows(field, vectors);
        assert_eq!(m.cols(), ambient_dim, "vector length must equal ambient dimension");
        let r = m.rref();
        let vectors = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        SubspaceBasis { field, ambient_dim, vectors, pivots: r.pivots, context }
    }

    pub fn zero(field: F, ambient_dim: usize, context: Coordinates) -> Self {
        SubspaceBasis { field, ambient_dim, vectors: Vec::new(), pivots: Vec::new(), context }
    }

    pub fn with_context(mut self, context: Coordinates) -> Self {
        self.context = context;
        self
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<F::Elem>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn context(&self) -> Coordinates {
        self.context
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o = f.sub(o, &f.mul(&c, r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_all(&self, other: &Self) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces (the reduced echelon basis is canonical).
    pub fn same_space(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.pivots == other.pivots
            && self.vectors == other.vectors
    }

    /// Number of basis vectors whose pivot falls in `[lo, hi)`.
    pub fn pivots_in(&self, lo: usize, hi: usize) -> usize {
        self.pivots.iter().filter(|&&p| p >= lo && p < hi).count()
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.ambient_dim];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        out
    }
}

/// Incrementally grown echelon basis, used by closure computations.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F: Field> {
    field: F,
    ambient_dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(field: F, ambient_dim: usize) -> Self {
        EchelonBuilder { field, ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was new.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            for (o, r) in w.iter_mut().zip(row) {
                *o = f.sub(o, &f.mul(&c, r));
            }
        }
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep earlier rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (o, r) in row.iter_mut().zip(&w) {
                *o = f.sub(o, &f.mul(&c, r));
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn finish(self, context: Coordinates) -> SubspaceBasis<F> {
        SubspaceBasis::from_vectors(self.field, self.ambient_dim, self.rows, context)
    }
}
