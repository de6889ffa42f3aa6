//! Seeded random generation of matrices and matrix polynomials.
//!
//! All randomness flows from a `u64` seed through ChaCha8, and batch drivers
//! derive per-sample seeds with [`derive_seed`], so results do not depend on
//! thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::truncmat::MatPoly;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 of `(master, index)`; distinct indices give unrelated streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs `f` on `samples` independently seeded generators in parallel and
/// returns the results in sample order.
pub fn run_samples<T, G>(samples: usize, seed: u64, f: G) -> Vec<T>
where
    T: Send,
    G: Fn(usize, &mut SeededRng) -> T + Sync + Send,
{
    (0..samples)
        .into_par_iter()
        .map(|i| f(i, &mut rng_from_seed(derive_seed(seed, i as u64))))
        .collect()
}

pub fn random_matrix<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    let data = (0..rows * cols).map(|_| field.random(rng)).collect();
    Matrix::from_vec(field, rows, cols, data)
}

pub fn random_invertible<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, n: usize) -> Matrix<F> {
    loop {
        let m = random_matrix(field, rng, n, n);
        if !field.is_zero(&m.determinant()) {
            return m;
        }
    }
}

/// Random polynomial of degree `< len`.
pub fn random_poly<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, len: usize) -> UniPoly<F> {
    UniPoly::new(field, (0..len).map(|_| field.random(rng)).collect())
}

/// `H C H^{-1}` for the companion matrix `C` of a random monic polynomial,
/// re-checked so the result is guaranteed 1-regular.
pub fn random_one_regular<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, n: usize) -> Matrix<F> {
    loop {
        let mut coeffs: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        // sometimes force a repeated root so nilpotent-like parts are exercised
        if n >= 2 && rng.gen_bool(0.25) {
            coeffs = vec![field.zero(); n];
            let c = field.random(rng);
            let mut p = UniPoly::one(field);
            for _ in 0..n {
                p = p.mul(&UniPoly::linear_root(field, &c));
            }
            coeffs.clone_from_slice(&p.coeffs()[..n]);
        }
        coeffs.push(field.one());
        let c = Matrix::companion(&UniPoly::new(field, coeffs));
        let h = random_invertible(field, rng, n);
        let m = h.mul(&c).mul(&h.inverse().unwrap());
        if m.minpoly().1 == n {
            return m;
        }
    }
}

/// A random matrix that is certainly not 1-regular (`n >= 2`), drawn from a
/// few structurally different families and conjugated at random.
pub fn random_non_one_regular<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, n: usize) -> Matrix<F> {
    assert!(n >= 2, "every 1x1 matrix is 1-regular");
    loop {
        let core = match rng.gen_range(0..4) {
            0 => Matrix::zeros(field, n, n),
            1 => Matrix::scalar(field, n, field.random(rng)),
            2 => {
                // rank-one nilpotent plus a scalar
                let c = field.random(rng);
                Matrix::unit(field, n, 0, 1).add(&Matrix::scalar(field, n, c))
            }
            _ => {
                // an eigenvalue with two independent eigenvectors
                let c = field.random(rng);
                let mut m = random_matrix(field, rng, n, n);
                for j in 0..n {
                    for i in 0..2 {
                        m[(i, j)] = field.zero();
                        m[(j, i)] = field.zero();
                    }
                }
                m[(0, 0)] = c.clone();
                m[(1, 1)] = c;
                m
            }
        };
        let h = random_invertible(field, rng, n);
        let m = h.mul(&core).mul(&h.inverse().unwrap());
        if m.minpoly().1 < n {
            return m;
        }
    }
}

pub fn random_matpoly<F: Field, R: Rng + ?Sized>(field: F, rng: &mut R, n: usize, k: usize) -> MatPoly<F> {
    MatPoly::from_coeffs((0..=k).map(|_| random_matrix(field, rng, n, n)).collect())
}

/// Random `A(t)` whose constant term is the given matrix.
pub fn random_matpoly_with_a0<F: Field, R: Rng + ?Sized>(a0: Matrix<F>, rng: &mut R, k: usize) -> MatPoly<F> {
    let field = a0.field();
    let n = a0.rows();
    let mut coeffs = vec![a0];
    coeffs.extend((0..k).map(|_| random_matrix(field, rng, n, n)));
    MatPoly::from_coeffs(coeffs)
}
