//! Commutants in the truncated ring, 1-regularity, the five-way equivalence
//! battery, lifting of commuting pairs one order up, and dimensions of
//! generated algebras and their `t`-adic filtrations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::subspace::{Coordinates, EchelonBuilder, SubspaceBasis};
use crate::symcalc::{b_from_q, q_from_b};
use crate::truncmat::MatPoly;

fn matpoly_coords<F: Field>(a: &MatPoly<F>) -> Coordinates {
    Coordinates::MatPolySpace { n: a.n(), k: a.k() }
}

/// Matrix of `B -> [A, B]` on flattened coordinates.
pub fn commutator_map<F: Field>(a: &MatPoly<F>) -> Matrix<F> {
    let (n, k) = (a.n(), a.k());
    let f = a.field();
    let dim = n * n * (k + 1);
    let mut m = Matrix::zeros(f, dim, dim);
    for s in 0..=k {
        for i in 0..n {
            for j in 0..n {
                let col = s * n * n + i * n + j;
                // [A_r, E_ij] lands in order r + s
                for r in 0..=(k - s) {
                    let ar = a.coeff(r);
                    let base = (r + s) * n * n;
                    for p in 0..n {
                        // (A_r E_ij)_{p, j} = A_r[p, i]
                        let idx = base + p * n + j;
                        m[(idx, col)] = f.add(&m[(idx, col)], &ar[(p, i)]);
                    }
                    for q in 0..n {
                        // (E_ij A_r)_{i, q} = A_r[j, q]
                        let idx = base + i * n + q;
                        m[(idx, col)] = f.sub(&m[(idx, col)], &ar[(j, q)]);
                    }
                }
            }
        }
    }
    m
}

/// Matrix of `Z -> [A_0, Z]` on row-major coordinates of `M_n`.
pub fn ad_matrix<F: Field>(a0: &Matrix<F>) -> Matrix<F> {
    commutator_map(&MatPoly::constant(a0.clone(), 0))
}

/// Basis of `{B : [A, B] = 0}` in flattened coordinates.
pub fn commutant_basis<F: Field>(a: &MatPoly<F>) -> SubspaceBasis<F> {
    commutator_map(a).kernel_basis().with_context(matpoly_coords(a))
}

pub fn is_one_regular<F: Field>(a0: &Matrix<F>) -> bool {
    a0.minpoly().1 == a0.rows()
}

/// Span of `A^i t^j`, `0 <= i < n`, `0 <= j <= k`.
pub fn power_span<F: Field>(a: &MatPoly<F>) -> SubspaceBasis<F> {
    let (n, k) = (a.n(), a.k());
    let mut vectors = Vec::with_capacity(n * (k + 1));
    let mut power = MatPoly::identity(a.field(), n, k);
    for _ in 0..n {
        for j in 0..=k {
            vectors.push(power.shift_up(j).flatten());
        }
        power = power.mul(a);
    }
    SubspaceBasis::from_vectors(a.field(), a.ambient_dim(), vectors, matpoly_coords(a))
}

/// Closure of `span{start}` under left multiplication by the generators.
fn closure<F: Field>(
    field: F,
    ambient: usize,
    start: Vec<F::Elem>,
    gens: usize,
    apply: impl Fn(usize, &[F::Elem]) -> Vec<F::Elem>,
) -> EchelonBuilder<F> {
    let mut builder = EchelonBuilder::new(field, ambient);
    let mut frontier = Vec::new();
    if builder.insert(&start) {
        frontier.push(start);
    }
    // each round strictly grows the span, so `ambient` rounds suffice
    for _ in 0..=ambient {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for v in &frontier {
            for g in 0..gens {
                let w = apply(g, v);
                if builder.insert(&w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    builder
}

/// Dimension of the unital algebra generated by square matrices.
pub fn algebra_dim<F: Field>(field: F, size: usize, generators: &[Matrix<F>]) -> usize {
    for g in generators {
        assert!(g.rows() == size && g.cols() == size, "generators must be {size} x {size}");
    }
    let id = Matrix::identity(field, size).into_entries();
    closure(field, size * size, id, generators.len(), |g, v| {
        generators[g].mul(&Matrix::from_vec(field, size, size, v.to_vec())).into_entries()
    })
    .dim()
}

/// `dim F[A, B, t]` with everything embedded in `M_{n(k+1)}`.
pub fn triple_algebra_dim<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> usize {
    let size = a.n() * (a.k() + 1);
    let t = MatPoly::t(a.field(), a.n(), a.k());
    algebra_dim(a.field(), size, &[a.embed_toeplitz(), b.embed_toeplitz(), t.embed_toeplitz()])
}

/// Subalgebra of the truncated ring generated by `gens` and `t`, as a
/// row-reduced basis in flattened coordinates.
pub fn generated_subalgebra<F: Field>(field: F, n: usize, k: usize, gens: &[MatPoly<F>]) -> SubspaceBasis<F> {
    let mut all: Vec<MatPoly<F>> = gens.to_vec();
    all.push(MatPoly::t(field, n, k));
    let id = MatPoly::identity(field, n, k).flatten();
    closure(field, n * n * (k + 1), id, all.len(), |g, v| {
        all[g].mul(&MatPoly::unflatten(field, n, k, v)).flatten()
    })
    .finish(Coordinates::MatPolySpace { n, k })
}

/// `[dim E_0/E_1, ..., dim E_k/E_{k+1}]` where `E_i` holds the elements of
/// valuation at least `i` in the algebra generated by `gens` and `t`.
///
/// With order-major coordinates, a reduced echelon row has valuation equal
/// to the block containing its pivot, so the quotients are pivot counts.
pub fn filtration_dims<F: Field>(field: F, n: usize, k: usize, gens: &[MatPoly<F>]) -> Vec<usize> {
    let e = generated_subalgebra(field, n, k, gens);
    (0..=k).map(|s| e.pivots_in(s * n * n, (s + 1) * n * n)).collect()
}

/// Outcome of evaluating the five equivalent conditions separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm24Report {
    pub n: usize,
    pub k: usize,
    pub one_regular: bool,
    pub powers_independent: bool,
    pub dim_fat: usize,
    pub commutant_dim: usize,
    pub commutant_equals_power_span: bool,
    pub q_param_roundtrip_ok: bool,
}

impl Thm24Report {
    /// Truth values of the five conditions, in order.
    pub fn conditions(&self) -> [bool; 5] {
        let full = self.n * (self.k + 1);
        [
            self.one_regular,
            self.powers_independent,
            self.dim_fat == full,
            self.commutant_equals_power_span,
            self.q_param_roundtrip_ok,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&x| x == c[0])
    }

    /// Conditions agree and, when they hold, both dimensions are `n(k+1)`.
    pub fn consistent(&self) -> bool {
        let full = self.n * (self.k + 1);
        self.all_agree() && (!self.one_regular || (self.commutant_dim == full && self.dim_fat == full))
    }
}

/// Image of `b_from_q` over all `q_j = x^i` with `i < n`.
fn parametrized_span<F: Field>(a: &MatPoly<F>) -> SubspaceBasis<F> {
    let (n, k) = (a.n(), a.k());
    let f = a.field();
    let mut vectors = Vec::new();
    for j in 0..=k {
        for i in 0..n {
            let mut qs = vec![UniPoly::zero(f); k + 1];
            qs[j] = UniPoly::monomial(f, f.one(), i);
            vectors.push(b_from_q(&qs, a).flatten());
        }
    }
    SubspaceBasis::from_vectors(f, a.ambient_dim(), vectors, matpoly_coords(a))
}

/// Evaluates the five conditions independently.
pub fn thm24_conditions<F: Field>(a: &MatPoly<F>) -> Thm24Report {
    let (n, k) = (a.n(), a.k());
    let full = n * (k + 1);
    let one_regular = is_one_regular(a.coeff(0));
    let powers = power_span(a);
    let t = MatPoly::t(a.field(), n, k);
    let dim_fat = algebra_dim(a.field(), full, &[a.embed_toeplitz(), t.embed_toeplitz()]);
    let commutant = commutant_basis(a);
    let param = parametrized_span(a);
    let roundtrip = param.same_space(&commutant)
        && commutant.vectors().iter().all(|v| {
            let b = MatPoly::unflatten(a.field(), n, k, v);
            matches!(q_from_b(a, &b), Ok(qs) if b_from_q(&qs, a) == b)
        });
    Thm24Report {
        n,
        k,
        one_regular,
        powers_independent: powers.dim() == full,
        dim_fat,
        commutant_dim: commutant.dim(),
        commutant_equals_power_span: commutant.same_space(&powers),
        q_param_roundtrip_ok: roundtrip,
    }
}

/// [`thm24_conditions`] plus the dimension checks for 1-regular input.
///
/// # Panics
/// If the conditions disagree, or a 1-regular input gives a commutant or
/// algebra of the wrong dimension: either would contradict the theorem and
/// points to a bug.
pub fn thm24_battery<F: Field>(a: &MatPoly<F>) -> Thm24Report {
    let report = thm24_conditions(a);
    let full = report.n * (report.k + 1);
    let one_regular = report.one_regular;
    assert!(report.all_agree(), "equivalent conditions disagree: {report:?}");
    if one_regular {
        assert_eq!(report.commutant_dim, full, "1-regular commutant has wrong dimension");
        assert_eq!(report.dim_fat, full, "1-regular F[A, t] has wrong dimension");
    }
    report
}

/// The matrix that the next coefficient `B_{k+1}` must satisfy
/// `[A_0, B_{k+1}] = rhs` for.
pub fn lift_rhs<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, a_next: &Matrix<F>) -> Matrix<F> {
    let k = a.k();
    let mut acc = a_next.commutator(b.coeff(0));
    for i in 1..=k {
        acc = acc.add(&a.coeff(i).commutator(b.coeff(k + 1 - i)));
    }
    acc.neg()
}

/// A `B_{k+1}` making `(A + A_next t^{k+1}, B + B_{k+1} t^{k+1})` commute
/// modulo `t^{k+2}`: the echelon solution with free variables zero.
pub fn lift_pair<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, a_next: &Matrix<F>) -> Result<Matrix<F>> {
    if !a.try_commutator(b)?.is_zero() {
        return Err(Error::NonCommuting);
    }
    let n = a.n();
    let rhs = lift_rhs(a, b, a_next);
    let sol = ad_matrix(a.coeff(0))
        .solve(rhs.entries())
        .ok_or_else(|| Error::Infeasible("right-hand side is not in the image of ad(A_0)".into()))?;
    Ok(Matrix::from_vec(a.field(), n, n, sol))
}

/// Appends one coefficient to each of `A` and `B`.
pub fn extend_pair<F: Field>(
    a: &MatPoly<F>,
    b: &MatPoly<F>,
    a_next: &Matrix<F>,
    b_next: &Matrix<F>,
) -> (MatPoly<F>, MatPoly<F>) {
    let mut ac = a.coeffs().to_vec();
    ac.push(a_next.clone());
    let mut bc = b.coeffs().to_vec();
    bc.push(b_next.clone());
    (MatPoly::from_coeffs(ac), MatPoly::from_coeffs(bc))
}

/// Whether `M = [A_0, Z]` is solvable for `Z`.
pub fn ad_image_contains<F: Field>(a0: &Matrix<F>, m: &Matrix<F>) -> bool {
    ad_matrix(a0).solve(m.entries()).is_some()
}

/// `[A_1, B_k] + [A_2, B_{k-1}] + ... + [A_k, B_1]`.
pub fn cross_commutator_sum<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Matrix<F> {
    let k = a.k();
    let mut acc = Matrix::zeros(a.field(), a.n(), a.n());
    for i in 1..=k {
        acc = acc.add(&a.coeff(i).commutator(b.coeff(k + 1 - i)));
    }
    acc
}

/// A uniformly random element of the commutant of `A`.
pub fn random_commutant_element<F: Field, R: Rng + ?Sized>(a: &MatPoly<F>, rng: &mut R) -> MatPoly<F> {
    let basis = commutant_basis(a);
    let coeffs: Vec<F::Elem> = (0..basis.dim()).map(|_| a.field().random(rng)).collect();
    MatPoly::unflatten(a.field(), a.n(), a.k(), &basis.combine(&coeffs))
}
