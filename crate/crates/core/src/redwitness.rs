//! Dimension counting for the block family `W` of commuting jet pairs whose
//! constant terms are fixed block nilpotents, the integer bound arithmetic
//! derived from it, and samplers that check the parameter count.
//!
//! Blocks: `n = 3a + b`, block sizes `a, a, a, b` (the last may be empty).

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::sampling::{derive_seed, random_matrix, rng_from_seed};
use crate::truncmat::MatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockShape {
    pub a: u64,
    pub b: u64,
    pub k: u64,
}

impl BlockShape {
    pub fn new(a: u64, b: u64, k: u64) -> Result<Self> {
        if a == 0 || k == 0 {
            return Err(Error::Precondition("block shape needs a >= 1 and k >= 1".into()));
        }
        Ok(BlockShape { a, b, k })
    }

    pub fn n(&self) -> u64 {
        3 * self.a + self.b
    }

    /// Start of block `1..=4` (one-based, matching the block names).
    fn offset(&self, block: usize) -> usize {
        (self.a as usize) * (block - 1).min(3)
    }

    fn size(&self, block: usize) -> usize {
        if block == 4 {
            self.b as usize
        } else {
            self.a as usize
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityReport {
    pub shape: BlockShape,
    pub dim_w_bound: i128,
    pub dim_c_a0: i128,
    pub dim_v_bound: i128,
    pub expected_dim: i128,
    pub inequality_value: i128,
    pub delta: i128,
    pub reducible: bool,
}

/// `Delta_k(a) = 4a^2 - 16(k+1)a + (k+1)^2 + 4(k+2)`.
pub fn delta(k: u64, a: u64) -> i128 {
    let (a, k) = (a as i128, k as i128);
    4 * a * a - 16 * (k + 1) * a + (k + 1) * (k + 1) + 4 * (k + 2)
}

/// `b^2 + (k+1-2a) b + 3a(k+1) - k - 2`; nonpositive exactly when the
/// lower bound on `dim V` reaches the expected dimension.
pub fn inequality_value(a: u64, b: u64, k: u64) -> i128 {
    let (a, b, k) = (a as i128, b as i128, k as i128);
    b * b + (k + 1 - 2 * a) * b + 3 * a * (k + 1) - k - 2
}

pub fn bounds(shape: BlockShape) -> ReducibilityReport {
    let (a, b, k) = (shape.a as i128, shape.b as i128, shape.k as i128);
    let n = 3 * a + b;
    let dim_w_bound = 12 * a * a + 10 * a * b + b * b + (k - 1) * n * n + k;
    let dim_c_a0 = 3 * a * a + 2 * a * b + b * b;
    let dim_v_bound = n * n - dim_c_a0 + dim_w_bound + 2;
    let expected_dim = (k + 1) * (n * n + n);
    let ineq = inequality_value(shape.a, shape.b, shape.k);
    ReducibilityReport {
        shape,
        dim_w_bound,
        dim_c_a0,
        dim_v_bound,
        expected_dim,
        inequality_value: ineq,
        delta: delta(shape.k, shape.a),
        reducible: ineq <= 0,
    }
}

/// Exact integer square root (floor).
pub fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Least `m >= 0` with `4 m^2 >= d`, i.e. `ceil(sqrt(d) / 2)`.
fn half_sqrt_ceil(d: i128) -> i128 {
    if d <= 0 {
        return 0;
    }
    let mut m = (isqrt(d as u128) / 2) as i128;
    while 4 * m * m < d {
        m += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub k: u64,
    pub mu: i128,
    pub beta: i128,
    pub n_k: i128,
}

/// `mu_k = ceil(2(k+1) + sqrt(15(k+1)^2 - 4(k+2)) / 2)`,
/// `beta_k = ceil(2(k+1) + sqrt(15(k+1)^2 - 4(k+1) + 12) / 2)`,
/// `N(k) = ceil(4 beta_k - (k+5)/2)`, all in integer arithmetic.
pub fn thresholds(k: u64) -> Thresholds {
    let kk = k as i128;
    let k1 = kk + 1;
    let mu = 2 * k1 + half_sqrt_ceil(15 * k1 * k1 - 4 * (kk + 2));
    let beta = 2 * k1 + half_sqrt_ceil(15 * k1 * k1 - 4 * k1 + 12);
    let num = 8 * beta - kk - 5;
    let n_k = num.div_euclid(2) + i128::from(num.rem_euclid(2) != 0);
    Thresholds { k, mu, beta, n_k }
}

/// Integer `b` with `ineq(a, b, k) <= 0`, as an inclusive range; `None`
/// when `Delta_k(a) < 0` or no integer fits.
pub fn b_interval(a: u64, k: u64) -> Option<(i128, i128)> {
    let d = delta(k, a);
    if d < 0 {
        return None;
    }
    let r = isqrt(d as u128) as i128;
    let center2 = 2 * a as i128 - k as i128 - 1;
    let ineq = |b: i128| b * b + (k as i128 + 1 - 2 * a as i128) * b + 3 * a as i128 * (k as i128 + 1) - k as i128 - 2;
    // start from the rounded real endpoints, then tighten exactly
    let mut lo = (center2 - r - 1).div_euclid(2);
    let mut hi = (center2 + r + 2).div_euclid(2);
    while ineq(lo) > 0 && lo <= hi {
        lo += 1;
    }
    while ineq(hi) > 0 && hi >= lo {
        hi -= 1;
    }
    while ineq(lo - 1) <= 0 {
        lo -= 1;
    }
    while ineq(hi + 1) <= 0 {
        hi += 1;
    }
    (lo <= hi).then_some((lo, hi))
}

/// First decomposition `n = 3a + b` with `a >= mu_k`, `b >= 0` and the
/// quadratic inequality satisfied, scanning `a` upwards.
pub fn find_witness(n: u64, k: u64) -> Option<(u64, u64)> {
    let mu = thresholds(k).mu.max(1) as u64;
    (mu..=n / 3).find_map(|a| {
        let b = n - 3 * a;
        (inequality_value(a, b, k) <= 0).then_some((a, b))
    })
}

pub fn reducible_table(k: u64, n_max: u64) -> Vec<(u64, Option<(u64, u64)>)> {
    (1..=n_max).into_par_iter().map(|n| (n, find_witness(n, k))).collect()
}

/// Coordinates of the `B` side: each parameter is a set of
/// `(order, row, col)` entries that move together.
fn b_parameters(shape: BlockShape) -> Vec<Vec<(usize, usize, usize)>> {
    let n = shape.n() as usize;
    let k = shape.k as usize;
    let mut params = Vec::new();
    let block_entries = |bi: usize, bj: usize| {
        let mut v = Vec::new();
        for r in 0..shape.size(bi) {
            for c in 0..shape.size(bj) {
                v.push((shape.offset(bi) + r, shape.offset(bj) + c));
            }
        }
        v
    };
    // B_0: B1 at (1,2) and (2,3), B2 at (1,3), B3 at (1,4), B4 at (4,3)
    for ((r1, c1), (r2, c2)) in block_entries(1, 2).into_iter().zip(block_entries(2, 3)) {
        params.push(vec![(0, r1, c1), (0, r2, c2)]);
    }
    for (bi, bj) in [(1, 3), (1, 4), (4, 3)] {
        for (r, c) in block_entries(bi, bj) {
            params.push(vec![(0, r, c)]);
        }
    }
    let zero_31: Vec<(usize, usize)> = block_entries(3, 1);
    for r in 0..n {
        for c in 0..n {
            if !zero_31.contains(&(r, c)) {
                params.push(vec![(1, r, c)]);
            }
        }
    }
    for s in 2..=k {
        for r in 0..n {
            for c in 0..n {
                params.push(vec![(s, r, c)]);
            }
        }
    }
    params
}

/// The fixed constant term `A_0` with identity blocks at (1,2) and (2,3).
pub fn w_a0<F: Field>(field: F, shape: BlockShape) -> Matrix<F> {
    let n = shape.n() as usize;
    let a = shape.a as usize;
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..a {
        m[(i, a + i)] = field.one();
        m[(a + i, 2 * a + i)] = field.one();
    }
    m
}

/// Random `A(t)` of the family: fixed `A_0`, `A_1` with zero (3,1) block,
/// the rest free.
pub fn sample_w_a<F: Field, R: Rng + ?Sized>(field: F, shape: BlockShape, rng: &mut R) -> MatPoly<F> {
    let n = shape.n() as usize;
    let k = shape.k as usize;
    let mut coeffs = vec![w_a0(field, shape)];
    for s in 1..=k {
        let mut m = random_matrix(field, rng, n, n);
        if s == 1 {
            for r in 0..shape.size(3) {
                for c in 0..shape.size(1) {
                    m[(shape.offset(3) + r, shape.offset(1) + c)] = field.zero();
                }
            }
        }
        coeffs.push(m);
    }
    MatPoly::from_coeffs(coeffs)
}

fn param_element<F: Field>(field: F, n: usize, k: usize, param: &[(usize, usize, usize)], c: &F::Elem) -> MatPoly<F> {
    let mut e = MatPoly::zero(field, n, k);
    for &(s, r, col) in param {
        e.coeff_mut(s)[(r, col)] = c.clone();
    }
    e
}

/// Free `(s, i, j)` slots of each B coefficient.
type Slots = Vec<Vec<(usize, usize, usize)>>;

/// Kernel of the commutation constraints on the `B` parameters at a fixed `A`.
fn b_kernel<F: Field>(a: &MatPoly<F>, shape: BlockShape) -> (Slots, Vec<Vec<F::Elem>>) {
    let f = a.field();
    let (n, k) = (a.n(), a.k());
    let params = b_parameters(shape);
    let cols: Vec<Vec<F::Elem>> = params
        .iter()
        .map(|p| a.commutator(&param_element(f, n, k, p, &f.one())).flatten())
        .collect();
    let system = Matrix::from_columns(f, n * n * (k + 1), &cols);
    let kernel = system.kernel_basis();
    (params, kernel.vectors().to_vec())
}

/// Free entries of `A` in the family: `A_1` minus its (3,1) block, plus `A_2..A_k`.
pub fn a_side_free_count(shape: BlockShape) -> u64 {
    let n = shape.n();
    n * n - shape.a * shape.a + (shape.k - 1) * n * n
}

const SAMPLE_ATTEMPTS: usize = 8;

/// A random commuting pair of the family.
pub fn sample_w_point<F: Field>(field: F, shape: BlockShape, seed: u64) -> Result<(MatPoly<F>, MatPoly<F>)> {
    let mut rng = rng_from_seed(seed);
    let (n, k) = (shape.n() as usize, shape.k as usize);
    for _ in 0..SAMPLE_ATTEMPTS {
        let a = sample_w_a(field, shape, &mut rng);
        let (params, kernel) = b_kernel(&a, shape);
        if kernel.is_empty() {
            continue;
        }
        let mut b = MatPoly::zero(field, n, k);
        for v in &kernel {
            let c = field.random(&mut rng);
            for (p, x) in params.iter().zip(v) {
                if !field.is_zero(x) {
                    b = b.add(&param_element(field, n, k, p, &field.mul(&c, x)));
                }
            }
        }
        debug_assert!(a.commutator(&b).is_zero());
        return Ok((a, b));
    }
    Err(Error::ResampleExhausted { attempts: SAMPLE_ATTEMPTS })
}

/// Whether `(A, B)` has the block shape of the family (commutation aside).
pub fn in_w_shape<F: Field>(shape: BlockShape, a: &MatPoly<F>, b: &MatPoly<F>) -> bool {
    let f = a.field();
    let n = shape.n() as usize;
    if a.n() != n || b.n() != n || a.k() != shape.k as usize || b.k() != shape.k as usize {
        return false;
    }
    if *a.coeff(0) != w_a0(f, shape) {
        return false;
    }
    let zero_31 = |m: &Matrix<F>| {
        (0..shape.size(3)).all(|r| (0..shape.size(1)).all(|c| f.is_zero(&m[(shape.offset(3) + r, shape.offset(1) + c)])))
    };
    if !zero_31(a.coeff(1)) || !zero_31(b.coeff(1)) {
        return false;
    }
    // B_0 must be a combination of its parameter blocks
    let mut rebuilt = Matrix::zeros(f, n, n);
    for p in b_parameters(shape).into_iter().filter(|p| p[0].0 == 0) {
        let (_, r, c) = p[0];
        for &(_, r2, c2) in &p {
            rebuilt[(r2, c2)] = b.coeff(0)[(r, c)].clone();
        }
    }
    rebuilt == *b.coeff(0)
}

/// Max over trials of the `A`-side free count plus the `B`-side kernel
/// dimension at a sampled `A`.
pub fn empirical_dim_w<F: Field>(field: F, shape: BlockShape, trials: usize, seed: u64) -> u64 {
    let free = a_side_free_count(shape);
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_from_seed(derive_seed(seed, t as u64));
            let a = sample_w_a(field, shape, &mut rng);
            free + b_kernel(&a, shape).1.len() as u64
        })
        .max()
        .unwrap_or(free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::is_one_regular;
    use crate::field::PrimeField;
    use crate::jetideal::generators;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn shape(a: u64, b: u64, k: u64) -> BlockShape {
        BlockShape::new(a, b, k).unwrap()
    }

    #[test]
    fn bound_examples() {
        let r = bounds(shape(8, 5, 1));
        assert_eq!(r.inequality_value, 0);
        assert!(r.reducible);
        assert_eq!((r.dim_v_bound, r.expected_dim), (1740, 1740));
        let r = bounds(shape(1, 0, 1));
        assert_eq!(r.dim_w_bound, 13);
        // 0 + 0 + 3*1*2 - 1 - 2
        assert_eq!(r.inequality_value, 3);
        assert!(!r.reducible);
        assert_eq!(bounds(shape(8, 4, 1)).inequality_value, 5);
        assert_eq!(bounds(shape(1, 1, 1)).dim_w_bound, 24);
        assert_eq!(bounds(shape(1, 0, 2)).dim_w_bound, 23);
    }

    #[test]
    fn threshold_examples() {
        let t1 = thresholds(1);
        assert_eq!((t1.mu, t1.beta, t1.n_k), (8, 8, 29));
        let t2 = thresholds(2);
        assert_eq!((t2.beta, t2.n_k), (12, 45));
        assert_eq!(delta(1, 8), 16);
        assert_eq!(b_interval(8, 1), Some((5, 9)));
    }

    #[test]
    fn table_examples() {
        let table = reducible_table(1, 60);
        assert_eq!(table[28], (29, Some((8, 5))));
        assert_eq!(table[27], (28, None));
        assert!(table.iter().all(|(n, w)| (*n >= 29) == w.is_some()));
        assert_eq!(find_witness(44, 2), Some((12, 8)));
        assert_eq!(inequality_value(12, 8, 2), 0);
    }

    #[test]
    fn degenerate_shape_a0() {
        let a0 = w_a0(fp(), shape(1, 0, 1));
        assert_eq!(a0, Matrix::from_i64_rows(fp(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
    }

    #[test]
    fn sampled_points() {
        let f = fp();
        for (s, seed) in [(shape(1, 0, 1), 1), (shape(1, 1, 1), 2), (shape(1, 0, 2), 3), (shape(2, 1, 1), 4)] {
            let (a, b) = sample_w_point(f, s, seed).unwrap();
            assert!(a.commutator(&b).is_zero());
            assert!(in_w_shape(s, &a, &b));
            if s.n() > 3 {
                assert!(!is_one_regular(a.coeff(0)));
            }
        }
        let (a, b) = sample_w_point(f, shape(1, 1, 1), 7).unwrap();
        let vals = generators(f, 4, 1).evaluate(&a, &b).unwrap();
        assert!(vals.iter().all(|v| *v == 0));
    }

    #[test]
    fn empirical_dimension() {
        let f = fp();
        assert_eq!(empirical_dim_w(f, shape(1, 0, 1), 10, 0), 13);
        assert!(empirical_dim_w(f, shape(1, 1, 1), 10, 0) as i128 >= bounds(shape(1, 1, 1)).dim_w_bound);
        assert!(empirical_dim_w(f, shape(1, 0, 2), 10, 0) as i128 >= bounds(shape(1, 0, 2)).dim_w_bound);
    }

    proptest! {
        #[test]
        fn two_forms_of_the_comparison_agree(a in 1u64..60, b in 0u64..60, k in 1u64..11) {
            let r = bounds(shape(a, b, k));
            prop_assert_eq!(r.reducible, r.dim_v_bound >= r.expected_dim);
            prop_assert_eq!(r.dim_v_bound - r.expected_dim, -r.inequality_value);
        }

        #[test]
        fn interval_matches_inequality(a in 1u64..80, k in 1u64..11) {
            let iv = b_interval(a, k);
            for b in -200i128..200 {
                let inside = iv.is_some_and(|(lo, hi)| lo <= b && b <= hi);
                let v = b * b + (k as i128 + 1 - 2 * a as i128) * b + 3 * a as i128 * (k as i128 + 1) - k as i128 - 2;
                prop_assert_eq!(inside, v <= 0);
            }
        }
    }

    #[test]
    fn witnesses_beyond_threshold() {
        let mut last = 0;
        for k in 1..=10 {
            let t = thresholds(k);
            assert!(t.n_k >= last);
            last = t.n_k;
            let n_k = t.n_k as u64;
            for (n, w) in reducible_table(k, 3 * n_k) {
                if n >= n_k {
                    assert!(w.is_some(), "k={k} n={n}");
                }
                if let Some((a, b)) = w {
                    assert_eq!(3 * a + b, n);
                    assert!(a as i128 >= t.mu);
                }
            }
        }
    }
}
