//! Symmetric noncommutative sums evaluated at matrices, and the maps between
//! polynomial data `q_0, ..., q_k` and elements of the commutant of `A(t)`.
//!
//! `S(x^[d], y_1, ..., y_t)` is the sum of all distinct words containing `d`
//! copies of `x` and the multiset `{y_1, ..., y_t}`. Which `y`s count as the
//! same variable matters: the value-based entry points group equal
//! matrices, while the coefficient formulas group by coefficient index
//! (`A_2` and `A_3` are different variables even if equal as matrices).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::truncmat::MatPoly;

/// Arguments of `S(x^[x_mult], ys...)`.
#[derive(Clone, Debug)]
pub struct SymArgs<F: Field> {
    pub x: Matrix<F>,
    pub x_mult: i64,
    pub ys: Vec<Matrix<F>>,
}

/// Visits the distinct permutations of `items` in lexicographic order.
pub fn for_each_multiset_permutation(items: &[usize], mut visit: impl FnMut(&[usize])) {
    let mut w = items.to_vec();
    w.sort_unstable();
    loop {
        visit(&w);
        // next lexicographic permutation
        let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else {
            return;
        };
        let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
    }
}

/// Multinomial coefficient `(sum m)! / prod(m!)` for the label counts of `items`.
pub fn multiset_permutation_count(items: &[usize]) -> u128 {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    let mut run: u128 = 0;
    for (idx, v) in sorted.iter().enumerate() {
        run = if idx > 0 && sorted[idx - 1] == *v { run + 1 } else { 1 };
        placed += 1;
        // multiply by placed / run, kept exact by doing the product first
        total = total * placed / run;
    }
    total
}

/// `S` over labeled variables: `x` repeated `x_mult` times plus one occurrence
/// of each `(label, matrix)`; equal labels are the same variable.
pub fn sym_sum_labeled<F: Field>(x: &Matrix<F>, x_mult: i64, ys: &[(usize, &Matrix<F>)]) -> Matrix<F> {
    let field = x.field();
    let n = x.rows();
    if x_mult < 0 {
        return Matrix::zeros(field, n, n);
    }
    // label 0 is x; others shifted by one
    let mut items: Vec<usize> = vec![0; x_mult as usize];
    let mut table: Vec<(usize, &Matrix<F>)> = Vec::new();
    for &(label, m) in ys {
        let slot = match table.iter().position(|(l, _)| *l == label) {
            Some(p) => p,
            None => {
                table.push((label, m));
                table.len() - 1
            }
        };
        items.push(slot + 1);
    }
    let mut acc = Matrix::zeros(field, n, n);
    for_each_multiset_permutation(&items, |word| {
        let mut prod = Matrix::identity(field, n);
        for &w in word {
            let m = if w == 0 { x } else { table[w - 1].1 };
            prod = prod.mul(m);
        }
        acc = acc.add(&prod);
    });
    acc
}

/// Groups `ys` by matrix equality, returning labels.
fn value_labels<F: Field>(ys: &[Matrix<F>]) -> Vec<usize> {
    let mut labels = Vec::with_capacity(ys.len());
    for (i, y) in ys.iter().enumerate() {
        let l = ys[..i].iter().position(|z| z == y).unwrap_or(i);
        labels.push(l);
    }
    labels
}

/// `S(x^[x_mult], ys...)` with equal matrices in `ys` treated as one variable.
pub fn sym_sum<F: Field>(args: &SymArgs<F>) -> Matrix<F> {
    let labels = value_labels(&args.ys);
    let ys: Vec<(usize, &Matrix<F>)> = labels.into_iter().zip(args.ys.iter()).collect();
    sym_sum_labeled(&args.x, args.x_mult, &ys)
}

/// `d_{ys}(q(x)) = sum_j c_j S(x^[j - t], ys)` over labeled `ys`.
pub fn d_op_labeled<F: Field>(q: &UniPoly<F>, ys: &[(usize, &Matrix<F>)], x: &Matrix<F>) -> Matrix<F> {
    let field = x.field();
    let t = ys.len() as i64;
    let mut acc = Matrix::zeros(field, x.rows(), x.rows());
    for (j, c) in q.coeffs().iter().enumerate() {
        if field.is_zero(c) || (j as i64) < t {
            continue;
        }
        acc = acc.add(&sym_sum_labeled(x, j as i64 - t, ys).scale(c));
    }
    acc
}

/// `d_{ys}(q(x))` with equal matrices in `ys` treated as one variable.
pub fn d_op<F: Field>(q: &UniPoly<F>, ys: &[Matrix<F>], x: &Matrix<F>) -> Matrix<F> {
    let labels = value_labels(ys);
    let ys: Vec<(usize, &Matrix<F>)> = labels.into_iter().zip(ys.iter()).collect();
    d_op_labeled(q, &ys, x)
}

/// Partitions of `m` as non-increasing lists of positive parts.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, m, &mut Vec::new(), &mut out);
    }
    out
}

fn labeled_coeffs<'a, F: Field>(parts: &[usize], coeffs: &'a [Matrix<F>]) -> Vec<(usize, &'a Matrix<F>)> {
    parts.iter().map(|&p| (p, &coeffs[p])).collect()
}

/// Coefficient of `t^l` in `A(t)^i`, with `A_coeffs = [A_0, ..., A_k]`.
pub fn g_coeff<F: Field>(i: usize, l: usize, a_coeffs: &[Matrix<F>]) -> Matrix<F> {
    assert!(l < a_coeffs.len(), "order {l} exceeds the available coefficients");
    let a0 = &a_coeffs[0];
    if l == 0 {
        return a0.pow(i as u32);
    }
    let mut acc = Matrix::zeros(a0.field(), a0.rows(), a0.rows());
    for parts in partitions(l) {
        let r = parts.len() as i64;
        let ys = labeled_coeffs(&parts, a_coeffs);
        acc = acc.add(&sym_sum_labeled(a0, i as i64 - r, &ys));
    }
    acc
}

/// Sum over partitions of `m` of `d_{A_parts}(q(A_0))`.
fn correction<F: Field>(q: &UniPoly<F>, m: usize, a_coeffs: &[Matrix<F>]) -> Matrix<F> {
    let a0 = &a_coeffs[0];
    let mut acc = Matrix::zeros(a0.field(), a0.rows(), a0.rows());
    for parts in partitions(m) {
        let ys = labeled_coeffs(&parts, a_coeffs);
        acc = acc.add(&d_op_labeled(q, &ys, a0));
    }
    acc
}

/// `B(t)` with `B_s = sum_{j<s} sum_{parts of s-j} d_{A_parts}(q_j(A_0)) + q_s(A_0)`,
/// which equals `sum_j q_j(A(t)) t^j`.
pub fn b_from_q<F: Field>(qs: &[UniPoly<F>], a: &MatPoly<F>) -> MatPoly<F> {
    let k = a.k();
    assert_eq!(qs.len(), k + 1, "need one polynomial per order");
    let coeffs = a.coeffs();
    let a0 = &coeffs[0];
    let mut out = MatPoly::zero(a.field(), a.n(), k);
    for s in 0..=k {
        let mut bs = qs[s].eval_matrix(a0);
        for (j, q) in qs.iter().enumerate().take(s) {
            bs = bs.add(&correction(q, s - j, coeffs));
        }
        out.set_coeff(s, bs);
    }
    out
}

/// Inverts [`b_from_q`] when `A_0` is 1-regular: stage by stage, `q_s` is the
/// unique polynomial of degree `< n` with `q_s(A_0)` equal to the residual.
pub fn q_from_b<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Result<Vec<UniPoly<F>>> {
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::ShapeMismatch("A and B must share n and k".into()));
    }
    let field = a.field();
    let n = a.n();
    let coeffs = a.coeffs();
    let a0 = &coeffs[0];
    if a0.minpoly().1 != n {
        return Err(Error::NotOneRegular);
    }
    let mut powers = vec![Matrix::identity(field, n)];
    for _ in 1..n {
        let next = powers.last().unwrap().mul(a0);
        powers.push(next);
    }
    let basis = Matrix::from_columns(
        field,
        n * n,
        &powers.iter().map(|p| p.entries().to_vec()).collect::<Vec<_>>(),
    );
    let mut qs: Vec<UniPoly<F>> = Vec::with_capacity(a.k() + 1);
    for s in 0..=a.k() {
        let mut residual = b.coeff(s).clone();
        for (j, q) in qs.iter().enumerate() {
            residual = residual.sub(&correction(q, s - j, coeffs));
        }
        let c = basis.solve(residual.entries()).ok_or(Error::NotInCommutant { stage: s })?;
        qs.push(UniPoly::new(field, c));
    }
    Ok(qs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::sampling::{random_matpoly, random_matrix, random_one_regular, random_poly, rng_from_seed};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn sym_sum_small_cases() {
        let f = fp();
        let mut rng = rng_from_seed(1);
        let x = random_matrix(f, &mut rng, 3, 3);
        let y = random_matrix(f, &mut rng, 3, 3);
        let s = sym_sum(&SymArgs { x: x.clone(), x_mult: 2, ys: vec![y.clone()] });
        let want = x.mul(&x).mul(&y).add(&x.mul(&y).mul(&x)).add(&y.mul(&x).mul(&x));
        assert_eq!(s, want);
        assert!(sym_sum(&SymArgs { x: x.clone(), x_mult: -1, ys: vec![y.clone()] }).is_zero());
        assert_eq!(sym_sum(&SymArgs { x: x.clone(), x_mult: 0, ys: vec![y.clone()] }), y);
        // a repeated matrix is one variable: S(y, y) = y^2
        assert_eq!(sym_sum(&SymArgs { x, x_mult: 0, ys: vec![y.clone(), y.clone()] }), y.mul(&y));
    }

    #[test]
    fn permutation_counts() {
        let mut seen = 0u128;
        for_each_multiset_permutation(&[0, 0, 1, 2, 2, 2], |_| seen += 1);
        assert_eq!(seen, 60);
        assert_eq!(multiset_permutation_count(&[0, 0, 1, 2, 2, 2]), 60);
        assert_eq!(multiset_permutation_count(&[]), 1);
    }

    #[test]
    fn d_op_examples() {
        let f = fp();
        let mut rng = rng_from_seed(2);
        let x = random_matrix(f, &mut rng, 3, 3);
        let y = random_matrix(f, &mut rng, 3, 3);
        let z = random_matrix(f, &mut rng, 3, 3);
        let sq = UniPoly::from_i64s(f, &[0, 0, 1]);
        assert_eq!(d_op(&sq, std::slice::from_ref(&y), &x), x.mul(&y).add(&y.mul(&x)));
        assert!(d_op(&UniPoly::from_i64s(f, &[5]), std::slice::from_ref(&y), &x).is_zero());
        // oracle: words of length 3 over {x, y, z} with exactly one y and one z
        let letters = [&x, &y, &z];
        let mut want = Matrix::zeros(f, 3, 3);
        for w in 0..27usize {
            let word = [w % 3, (w / 3) % 3, w / 9];
            if word.iter().filter(|&&c| c == 1).count() == 1 && word.iter().filter(|&&c| c == 2).count() == 1 {
                want = want.add(&letters[word[0]].mul(letters[word[1]]).mul(letters[word[2]]));
            }
        }
        let cube = UniPoly::from_i64s(f, &[0, 0, 0, 1]);
        assert_eq!(d_op(&cube, &[y.clone(), z.clone()], &x), want);
    }

    #[test]
    fn g_coeff_matches_powers() {
        let f = fp();
        let mut rng = rng_from_seed(3);
        let a = random_matpoly(f, &mut rng, 2, 2);
        let cube = a.mul(&a).mul(&a);
        for l in 0..=2 {
            assert_eq!(&g_coeff(3, l, a.coeffs()), cube.coeff(l));
            assert_eq!(&g_coeff(1, l, a.coeffs()), a.coeff(l));
        }
        assert_eq!(g_coeff(3, 0, a.coeffs()), a.coeff(0).pow(3));
    }

    #[test]
    fn equal_coefficients_stay_distinct_variables() {
        let f = fp();
        let mut rng = rng_from_seed(4);
        let m = random_matrix(f, &mut rng, 2, 2);
        let a0 = random_matrix(f, &mut rng, 2, 2);
        let a = MatPoly::from_coeffs(vec![a0, m.clone(), m.clone(), m]);
        let sq = a.mul(&a);
        for l in 0..=3 {
            assert_eq!(&g_coeff(2, l, a.coeffs()), sq.coeff(l));
        }
    }

    #[test]
    fn b_from_q_trivial_cases() {
        let f = fp();
        let mut rng = rng_from_seed(5);
        let a = random_matpoly(f, &mut rng, 3, 2);
        let zeros = vec![UniPoly::zero(f); 3];
        assert!(b_from_q(&zeros, &a).is_zero());
        let mut qs = zeros;
        qs[0] = UniPoly::x(f);
        assert_eq!(b_from_q(&qs, &a), a);
    }

    #[test]
    fn q_from_b_cases() {
        let f = fp();
        let mut rng = rng_from_seed(6);
        let a0 = random_one_regular(f, &mut rng, 3);
        let a = crate::sampling::random_matpoly_with_a0(a0, &mut rng, 2);
        let qs = q_from_b(&a, &MatPoly::identity(f, 3, 2)).unwrap();
        assert_eq!(qs[0], UniPoly::one(f));
        assert!(qs[1].is_zero() && qs[2].is_zero());
        // B = t e_{11} does not commute with a generic A; first failure at order 1
        let mut b = MatPoly::zero(f, 3, 2);
        b.coeff_mut(1)[(0, 0)] = 1;
        assert_eq!(q_from_b(&a, &b), Err(Error::NotInCommutant { stage: 1 }));
        let not_regular = MatPoly::zero(f, 3, 2);
        assert_eq!(q_from_b(&not_regular, &b), Err(Error::NotOneRegular));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn sym_sum_permutation_invariant(seed in any::<u64>(), d in -1i64..3, t in 0usize..4) {
            let f = fp();
            let mut rng = rng_from_seed(seed);
            let x = random_matrix(f, &mut rng, 2, 2);
            let mut ys: Vec<Matrix<PrimeField>> = (0..t).map(|_| random_matrix(f, &mut rng, 2, 2)).collect();
            if t >= 2 {
                ys[1] = ys[0].clone();
            }
            let s1 = sym_sum(&SymArgs { x: x.clone(), x_mult: d, ys: ys.clone() });
            ys.reverse();
            ys.rotate_left(t.min(1));
            let s2 = sym_sum(&SymArgs { x, x_mult: d, ys });
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn enumerator_count_is_multinomial(items in proptest::collection::vec(0usize..3, 0..8)) {
            let mut seen = 0u128;
            let mut distinct = std::collections::BTreeSet::new();
            for_each_multiset_permutation(&items, |w| { seen += 1; distinct.insert(w.to_vec()); });
            prop_assert_eq!(seen, multiset_permutation_count(&items));
            prop_assert_eq!(distinct.len() as u128, seen);
        }

        #[test]
        fn b_from_q_is_direct_evaluation(seed in any::<u64>(), n in 1usize..5, k in 0usize..4, deg in 1usize..6) {
            let f = PrimeField::new(32003).unwrap();
            let mut rng = rng_from_seed(seed);
            let a = random_matpoly(f, &mut rng, n, k);
            let qs: Vec<_> = (0..=k).map(|_| random_poly(f, &mut rng, deg)).collect();
            let mut direct = MatPoly::zero(f, n, k);
            for (j, q) in qs.iter().enumerate() {
                direct = direct.add(&MatPoly::eval_poly(q, &a).shift_up(j));
            }
            prop_assert_eq!(b_from_q(&qs, &a), direct);
        }

        #[test]
        fn q_round_trip(seed in any::<u64>(), n in 1usize..5, k in 0usize..4) {
            let f = PrimeField::new(32003).unwrap();
            let mut rng = rng_from_seed(seed);
            let a0 = random_one_regular(f, &mut rng, n);
            let a = crate::sampling::random_matpoly_with_a0(a0, &mut rng, k);
            let qs: Vec<_> = (0..=k).map(|_| random_poly(f, &mut rng, n)).collect();
            let b = b_from_q(&qs, &a);
            prop_assert_eq!(q_from_b(&a, &b).unwrap(), qs);
        }
    }
}
