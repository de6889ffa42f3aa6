//! Root finding in the base field.
//!
//! Over `F_p`: `gcd(x^p - x, f)` isolates the product of the linear factors,
//! which is then split by random `(x + d)^((p-1)/2) - 1` gcds. Over the
//! rationals: the squarefree part is made monic-integral, its roots are found
//! modulo a good prime and Hensel-lifted past the Cauchy bound, and every
//! candidate is checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{is_prime_u64, Field, PrimeField, Rationals};
use crate::poly::UniPoly;

/// Brute-force evaluation is used below this modulus.
const SMALL_PRIME: u64 = 64;

pub(crate) fn prime_field_roots(f: &UniPoly<PrimeField>) -> Vec<u64> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let field = f.field();
    let p = field.modulus();
    if f.is_constant() {
        return Vec::new();
    }
    if p < SMALL_PRIME {
        return (0..p).filter(|x| field.is_zero(&f.eval(x))).collect();
    }
    let m = f.monic();
    let x = UniPoly::x(field);
    let xp = x.pow_mod(p, &m);
    let g = xp.sub(&x).gcd(&m);
    let mut roots = Vec::new();
    // fixed seed: the output is sorted, so only termination depends on it
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_600d);
    split_linear(&g, &mut roots, &mut rng);
    roots.sort_unstable();
    roots
}

fn split_linear(g: &UniPoly<PrimeField>, out: &mut Vec<u64>, rng: &mut ChaCha8Rng) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(field.neg(&m.coeff(0)));
        }
        Some(d) => {
            let p = field.modulus();
            loop {
                let delta = rng.gen_range(0..p);
                let shifted = UniPoly::new(field, vec![delta, 1]);
                let h = shifted
                    .pow_mod((p - 1) / 2, g)
                    .sub(&UniPoly::one(field))
                    .gcd(g);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < d {
                    split_linear(&h, out, rng);
                    split_linear(&g.div_exact(&h).unwrap(), out, rng);
                    return;
                }
            }
        }
    }
}

pub(crate) fn rational_roots(f: &UniPoly<Rationals>) -> Vec<BigRational> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    if f.is_constant() {
        return Vec::new();
    }
    let r = f.radical();
    // clear denominators, then remove content
    let lcm = r
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = r
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        ints.remove(0);
    }
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in ints.iter_mut() {
        *c /= &content;
    }
    let d = ints.len() - 1;
    if d > 0 {
        let lead = ints[d].clone();
        // g(y) = lead^(d-1) r(y / lead), monic with integer coefficients
        let mut g = vec![BigInt::zero(); d + 1];
        let mut scale = BigInt::one();
        for i in (0..d).rev() {
            g[i] = &ints[i] * &scale;
            scale *= &lead;
        }
        g[d] = BigInt::one();
        for y in monic_integer_roots(&g) {
            roots.push(BigRational::new(y, lead.clone()));
        }
    }
    roots.sort();
    roots
}

fn eval_int(g: &[BigInt], y: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

fn deriv_int(g: &[BigInt]) -> Vec<BigInt> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Integer roots of a squarefree monic integer polynomial.
fn monic_integer_roots(g: &[BigInt]) -> Vec<BigInt> {
    let bound = g[..g.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let dg = deriv_int(g);
    let mut candidate = (1u64 << 31) - 1;
    let (field, roots_mod_p) = loop {
        if is_prime_u64(candidate) {
            let field = PrimeField::new(candidate).unwrap();
            let gp = UniPoly::new(field, g.iter().map(|c| field.from_bigint(c)).collect());
            if gp.gcd(&gp.derivative()).is_constant() {
                break (field, prime_field_roots(&gp));
            }
        }
        candidate -= 2;
    };
    let p = BigInt::from(field.modulus());
    let target = &bound * BigInt::from(2);
    let mut out = Vec::new();
    for r0 in roots_mod_p {
        let mut r = BigInt::from(r0);
        let mut m = p.clone();
        while m <= target {
            m = &m * &m;
            let num = eval_int(g, &r);
            let den = eval_int(&dg, &r);
            r = (&r - num * mod_inverse(&den, &m)).mod_floor(&m);
        }
        let half = &m / BigInt::from(2);
        let y = if r > half { r - &m } else { r };
        if eval_int(g, &y).is_zero() {
            out.push(y);
        }
    }
    out
}
