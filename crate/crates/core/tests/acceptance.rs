//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All arithmetic is exact, so every tolerance is zero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use jetpairs::commutant::{
    algebra_dim, cross_commutator_sum, extend_pair, filtration_dims, is_one_regular, lift_pair, random_commutant_element,
    thm24_conditions, triple_algebra_dim,
};
use jetpairs::irr3::{build_xy, certify_closure, normalize, sample_pair, ClosureCertificate, Move, PairCase, Terminal};
use jetpairs::jetideal::{generator_index, generators, jacobian_tangent_dim, JetPoly};
use jetpairs::redwitness::{bounds, empirical_dim_w, reducible_table, thresholds, BlockShape};
use jetpairs::sampling::{
    random_matpoly, random_matpoly_with_a0, random_matrix, random_non_one_regular, random_one_regular, run_samples,
    SeededRng,
};
use jetpairs::symcalc::b_from_q;
use jetpairs::{Field, MatPoly, Matrix, PrimeField, UniPoly};

const P: u64 = 32003;
const SEED: u64 = 20_240_601;

// pinned thresholds
const SWEEP_SAMPLES: usize = 100;
const TANGENT_SAMPLES: usize = 20;
const EMPIRICAL_TRIALS: usize = 50;
const ALGEBRA_PAIRS: usize = 50;
const CERTIFICATES: usize = 120;
const BATTERY_TIME_LIMIT: Duration = Duration::from_secs(60);

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn u_point(f: PrimeField, n: usize, k: usize, rng: &mut SeededRng) -> (MatPoly<PrimeField>, MatPoly<PrimeField>) {
    let a = random_matpoly_with_a0(random_one_regular(f, rng, n), rng, k);
    let b = random_commutant_element(&a, rng);
    (a, b)
}

fn unit_matpoly(f: PrimeField, n: usize, k: usize, idx: usize) -> MatPoly<PrimeField> {
    let mut v = vec![f.zero(); n * n * (k + 1)];
    v[idx] = f.one();
    MatPoly::unflatten(f, n, k, &v)
}

/// Commutant dimension by brute force: columns `[A, E]` for every unit `E`
/// computed with the ring product.
fn commutant_dim_oracle(a: &MatPoly<PrimeField>) -> usize {
    let f = a.field();
    let (n, k) = (a.n(), a.k());
    let dim = n * n * (k + 1);
    let cols: Vec<Vec<u64>> = (0..dim).map(|i| a.commutator(&unit_matpoly(f, n, k, i)).flatten()).collect();
    dim - Matrix::from_columns(f, dim, &cols).rank()
}

/// `q(A)` by explicit powers.
fn eval_by_powers(q: &UniPoly<PrimeField>, a: &MatPoly<PrimeField>) -> MatPoly<PrimeField> {
    let mut acc = MatPoly::zero(a.field(), a.n(), a.k());
    for (i, c) in q.coeffs().iter().enumerate() {
        acc = acc.add(&a.pow(i as u32).scale(c));
    }
    acc
}

/// `M` in the image of `Z -> [A_0, Z]`, via ranks of explicit columns.
fn in_ad_image(a0: &Matrix<PrimeField>, m: &Matrix<PrimeField>) -> bool {
    let f = a0.field();
    let n = a0.rows();
    let cols: Vec<Vec<u64>> = (0..n * n)
        .map(|i| a0.commutator(&Matrix::unit(f, n, i / n, i % n)).entries().to_vec())
        .collect();
    let ad = Matrix::from_columns(f, n * n, &cols);
    let mut aug = cols.clone();
    aug.push(m.entries().to_vec());
    ad.rank() == Matrix::from_columns(f, n * n, &aug).rank()
}

/// Tangent dimension from the linearization `(dA, dB) -> [dA, B] + [A, dB]`.
fn tangent_oracle(a: &MatPoly<PrimeField>, b: &MatPoly<PrimeField>) -> usize {
    let f = a.field();
    let (n, k) = (a.n(), a.k());
    let dim = n * n * (k + 1);
    let mut cols = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        cols.push(unit_matpoly(f, n, k, i).commutator(b).flatten());
    }
    for i in 0..dim {
        cols.push(a.commutator(&unit_matpoly(f, n, k, i)).flatten());
    }
    2 * dim - Matrix::from_columns(f, dim, &cols).rank()
}

fn c1_battery() -> (bool, String) {
    let f = fp();
    let start = Instant::now();
    let mut total = 0;
    let mut regular = 0;
    let mut bad = Vec::new();
    for n in 2..=4 {
        for k in 1..=3 {
            let res = run_samples(SWEEP_SAMPLES, SEED + (10 * n + k) as u64, |i, rng| {
                let a0 = if i % 2 == 0 { random_one_regular(f, rng, n) } else { random_non_one_regular(f, rng, n) };
                let a = random_matpoly_with_a0(a0, rng, k);
                let rep = thm24_conditions(&a);
                let oracle = commutant_dim_oracle(&a);
                let full = n * (k + 1);
                let ok = rep.all_agree()
                    && rep.commutant_dim == oracle
                    && (!rep.one_regular || (rep.commutant_dim == full && rep.dim_fat == full))
                    && rep.one_regular == is_one_regular(a.coeff(0));
                (ok, rep.one_regular)
            });
            total += res.len();
            regular += res.iter().filter(|r| r.1).count();
            if res.iter().any(|r| !r.0) {
                bad.push((n, k));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < BATTERY_TIME_LIMIT && regular > 0 && regular < total;
    (ok, format!("{total} samples over 9 configurations ({regular} 1-regular), disagreements at {bad:?}, {:.1}s", elapsed.as_secs_f64()))
}

fn c2_lemma() -> (bool, String) {
    let f = fp();
    let mut total = 0;
    let mut good = 0;
    for n in 1..=4 {
        for k in 0..=3 {
            let res = run_samples(SWEEP_SAMPLES / 4, SEED + 100 + (10 * n + k) as u64, |_, rng| {
                let a = random_matpoly(f, rng, n, k);
                let qs: Vec<UniPoly<PrimeField>> =
                    (0..=k).map(|_| UniPoly::new(f, (0..n + 2).map(|_| f.random(rng)).collect())).collect();
                let mut direct = MatPoly::zero(f, n, k);
                let t = MatPoly::t(f, n, k);
                for (j, q) in qs.iter().enumerate() {
                    direct = direct.add(&eval_by_powers(q, &a).mul(&t.pow(j as u32)));
                }
                b_from_q(&qs, &a) == direct
            });
            total += res.len();
            good += res.iter().filter(|&&x| x).count();
        }
    }
    (good == total && total >= 100, format!("{good}/{total} exact matches, n <= 4, k <= 3"))
}

struct LiftSweep {
    lifted: usize,
    cor27: usize,
    total: usize,
}

fn lift_sweep() -> LiftSweep {
    let f = fp();
    let (n, k) = (3, 2);
    let res = run_samples(SWEEP_SAMPLES, SEED + 200, |_, rng| {
        let (a, b) = u_point(f, n, k, rng);
        let a_next = random_matrix(f, rng, n, n);
        let lifted = match lift_pair(&a, &b, &a_next) {
            Ok(bn) => {
                let (a2, b2) = extend_pair(&a, &b, &a_next, &bn);
                a2.k() == 3 && a2.commutator(&b2).is_zero()
            }
            Err(_) => false,
        };
        // sum [A_i, B_{k+1-i}] computed from scratch
        let mut s = Matrix::zeros(f, n, n);
        for i in 1..=k {
            s = s.add(&a.coeff(i).mul(b.coeff(k + 1 - i)).sub(&b.coeff(k + 1 - i).mul(a.coeff(i))));
        }
        let cor = s == cross_commutator_sum(&a, &b) && in_ad_image(a.coeff(0), &s);
        (lifted, cor)
    });
    LiftSweep {
        lifted: res.iter().filter(|r| r.0).count(),
        cor27: res.iter().filter(|r| r.1).count(),
        total: res.len(),
    }
}

fn c3_lift(s: &LiftSweep) -> (bool, String) {
    let f = PrimeField::new(P).unwrap();
    let x = MatPoly::constant(Matrix::unit(f, 2, 0, 1), 1).shift_up(1);
    let y = MatPoly::constant(Matrix::unit(f, 2, 1, 0), 1).shift_up(1);
    let infeasible = matches!(lift_pair(&x, &y, &Matrix::zeros(f, 2, 2)), Err(jetpairs::Error::Infeasible(_)))
        && !in_ad_image(x.coeff(0), &Matrix::unit(f, 2, 0, 1).commutator(&Matrix::unit(f, 2, 1, 0)));
    (
        s.lifted == s.total && s.total >= 100 && infeasible,
        format!("{}/{} lifts with zero order-3 commutator (n=3, k=2); t*e12, t*e21 infeasible: {infeasible}", s.lifted, s.total),
    )
}

fn c4_cor27(s: &LiftSweep) -> (bool, String) {
    (s.cor27 == s.total, format!("{}/{} cross sums in im ad(A_0)", s.cor27, s.total))
}

fn c5_tangent() -> (bool, String) {
    let f = fp();
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, k, expected) in [(2, 1, 12), (2, 2, 18), (3, 1, 24), (3, 2, 36)] {
        assert_eq!((n * n + n) * (k + 1), expected);
        let res = run_samples(TANGENT_SAMPLES, SEED + 300 + (10 * n + k) as u64, |_, rng| {
            let (a, b) = u_point(f, n, k, rng);
            (jacobian_tangent_dim(n, k, &a, &b).ok(), tangent_oracle(&a, &b))
        });
        let good = res.iter().filter(|(d, o)| *d == Some(expected) && *o == expected).count();
        ok &= good == res.len();
        parts.push(format!("({n},{k})={expected}: {good}/{}", res.len()));
    }
    (ok, parts.join(", "))
}

fn c6_arithmetic() -> (bool, String) {
    let t1 = thresholds(1);
    let t2 = thresholds(2);
    let r = bounds(BlockShape::new(8, 5, 1).unwrap());
    let mut ok = (t1.mu, t1.beta, t1.n_k) == (8, 8, 29) && (t2.beta, t2.n_k) == (12, 45);
    ok &= r.dim_v_bound == 1740 && r.expected_dim == 1740 && r.inequality_value == 0;
    let mut table_ok = true;
    for k in 1..=5 {
        let nk = thresholds(k).n_k as u64;
        let table = reducible_table(k, 3 * nk);
        table_ok &= table.len() as u64 == 3 * nk && table.iter().filter(|(n, _)| *n >= nk).all(|(_, w)| w.is_some());
        for (n, w) in &table {
            if let Some((a, b)) = w {
                table_ok &= 3 * a + b == *n && bounds(BlockShape::new(*a, *b, k).unwrap()).reducible;
            }
        }
    }
    ok &= table_ok;
    (
        ok,
        format!(
            "thresholds(1) = (mu {}, beta {}, N {}), beta_2 = {}, N(2) = {}, bounds(8,5,1): dimV {} expected {} ineq {}, tables k=1..5: {table_ok}",
            t1.mu, t1.beta, t1.n_k, t2.beta, t2.n_k, r.dim_v_bound, r.expected_dim, r.inequality_value
        ),
    )
}

fn c7_empirical() -> (bool, String) {
    let f = fp();
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b, k) in [(1, 0, 1), (1, 1, 1), (1, 0, 2)] {
        let s = BlockShape::new(a, b, k).unwrap();
        let bound = bounds(s).dim_w_bound;
        let d = empirical_dim_w(f, s, EMPIRICAL_TRIALS, SEED + 400) as i128;
        ok &= d >= bound;
        if (a, b, k) == (1, 0, 1) {
            ok &= d == 13;
        }
        parts.push(format!("({a},{b},{k}): {d} >= {bound}"));
    }
    (ok, parts.join(", "))
}

fn c8_certificates() -> (bool, String) {
    let f = fp();
    let res = run_samples(CERTIFICATES, SEED + 500, |i, rng| {
        let case = PairCase::ALL[i % 4];
        let k = 1 + (i / 4) % 3;
        let (a, b) = sample_pair(f, case, k, rng);
        let cert = certify_closure(&a, &b, i as u64).unwrap();
        // replay independently of ClosureCertificate::replay
        let mut pair = (a, b);
        let mut every_step = true;
        for m in &cert.moves {
            match m.apply(&pair.0, &pair.1) {
                Ok(p) => {
                    every_step &= p.0.mul(&p.1) == p.1.mul(&p.0);
                    pair = p;
                }
                Err(_) => every_step = false,
            }
        }
        let terminal_ok = match &cert.terminal {
            Terminal::InU => pair.0.coeff(0).minpoly().0.degree() == Some(3),
            Terminal::SpectrumSplit { .. } => f.base_roots(&pair.0.coeff(0).charpoly()).len() >= 2,
            Terminal::Stalled(_) => false,
        };
        let text_ok = ClosureCertificate::parse(f, &cert.to_text()).as_ref() == Ok(&cert);
        let deformed = cert.moves.iter().any(|m| matches!(m, Move::Deform { .. }));
        (case, every_step && terminal_ok && text_ok && cert.validate().is_ok(), deformed, cert.is_stalled())
    });
    let good = res.iter().filter(|r| r.1).count();
    let stalled = res.iter().filter(|r| r.3).count();
    let mut coverage = true;
    for case in PairCase::ALL {
        let n = res.iter().filter(|r| r.0 == case).count();
        coverage &= n >= 25;
    }
    let nilpotent_deforms = res.iter().filter(|r| r.0 == PairCase::RankOneNilpotent && r.2).count();
    let zero_deforms = res.iter().filter(|r| r.0 == PairCase::ZeroConstant && r.2).count();
    coverage &= nilpotent_deforms > 0 && zero_deforms > 0;
    (
        good == res.len() && stalled == 0 && coverage,
        format!(
            "{good}/{} certificates replay, {stalled} stalled, deformations used: rank-one {nilpotent_deforms}, zero-constant {zero_deforms}",
            res.len()
        ),
    )
}

fn c9_identities() -> (bool, String) {
    let f = fp();
    let mut checked = 0;
    let mut good = 0;
    let mut seed = SEED + 600;
    while checked < SWEEP_SAMPLES {
        let res = run_samples(SWEEP_SAMPLES, seed, |i, rng| {
            let k = 1 + i % 3;
            let (mut a, b) = sample_pair(f, PairCase::RankOneNilpotent, k, rng);
            let a0 = a.coeff(0).clone();
            // remove the scalar part of A_0
            let third = f.inv(&f.from_i64(3)).unwrap();
            let c = f.mul(&a0.trace(), &third);
            a = a.sub(&MatPoly::identity(f, 3, k).scale(&c));
            if a.coeff(0).rank() != 1 {
                return None;
            }
            let (n, _) = normalize(&a, &b).ok()?;
            let (x, y) = build_xy(&n.0, &n.1).ok()?;
            let (a, b) = n;
            let lam = f.random_nonzero(rng);
            let ok = x.mul(&y) == y.mul(&x)
                && a.mul(&y).add(&x.mul(&b)) == b.mul(&x).add(&y.mul(&a))
                && a.add(&x.scale(&lam)).commutator(&b.add(&y.scale(&lam))).is_zero();
            Some(ok)
        });
        for r in res.into_iter().flatten() {
            checked += 1;
            good += r as usize;
        }
        seed += 1;
    }
    (good == checked, format!("{good}/{checked} normalized pairs satisfy [X,Y] = 0 and AY + XB = BX + YA, k <= 3"))
}

fn c10_algebra() -> (bool, String) {
    let f = fp();
    let n = 3;
    let mut good = 0;
    let mut total = 0;
    for k in 1..=2 {
        let res = run_samples(ALGEBRA_PAIRS, SEED + 700 + k as u64, |_, rng| {
            let (a, b) = u_point(f, n, k, rng);
            let base = algebra_dim(f, n, &[a.coeff(0).clone(), b.coeff(0).clone()]);
            let d = triple_algebra_dim(&a, &b);
            let filt = filtration_dims(f, n, k, &[a, b]);
            base == n && d == n * (k + 1) && filt == vec![n; k + 1]
        });
        total += res.len();
        good += res.iter().filter(|&&x| x).count();
    }
    (good == total, format!("{good}/{total} pairs (n=3, k=1,2): dim F[A,B,t] = n(k+1), filtration [n, ..., n]"))
}

fn c11_trace() -> (bool, String) {
    let f = fp();
    let mut ok = true;
    let mut count = 0;
    for n in 1..=4 {
        for k in 0..=3 {
            let ideal = generators(f, n, k);
            for s in 0..=k {
                let mut sum = JetPoly::zero(f);
                for i in 1..=n {
                    sum = sum.add(&ideal.gens[generator_index(n, s, i, i)]);
                }
                ok &= sum.is_zero();
                count += 1;
            }
        }
    }
    (ok, format!("{count} diagonal sums vanish identically, n <= 4, k <= 3"))
}

type Check<'a> = Box<dyn Fn() -> (bool, String) + 'a>;

fn main() {
    let sweep = lift_sweep();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 equivalence battery", Box::new(c1_battery)),
        ("2 parametrization identity", Box::new(c2_lemma)),
        ("3 lifting", Box::new(|| c3_lift(&sweep))),
        ("4 cross commutator sums", Box::new(|| c4_cor27(&sweep))),
        ("5 tangent dimension", Box::new(c5_tangent)),
        ("6 reducibility arithmetic", Box::new(c6_arithmetic)),
        ("7 empirical W dimension", Box::new(c7_empirical)),
        ("8 n=3 certificates", Box::new(c8_certificates)),
        ("9 deformation identities", Box::new(c9_identities)),
        ("10 generated algebra", Box::new(c10_algebra)),
        ("11 trace identity", Box::new(c11_trace)),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        failures += !ok as usize;
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
