//! The jet ideal of the commuting pairs scheme: substitute
//! `x_ij -> sum_s x^(s)_ij t^s` (same for `y`) into the entries of
//! `XY - YX` and collect the coefficient of each `t^s`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::truncmat::MatPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    X,
    Y,
}

/// `x^(order)_{row,col}` or `y^(order)_{row,col}`, indices one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVar {
    pub series: Series,
    pub order: usize,
    pub row: usize,
    pub col: usize,
}

impl JetVar {
    pub fn x(order: usize, row: usize, col: usize) -> Self {
        JetVar { series: Series::X, order, row, col }
    }

    pub fn y(order: usize, row: usize, col: usize) -> Self {
        JetVar { series: Series::Y, order, row, col }
    }

    /// Column of this variable in the Jacobian: all `x` first, then all
    /// `y`, each order-major then row-major.
    pub fn index(&self, n: usize, k: usize) -> usize {
        let block = n * n * (k + 1);
        let s = match self.series {
            Series::X => 0,
            Series::Y => 1,
        };
        s * block + self.order * n * n + (self.row - 1) * n + (self.col - 1)
    }

    pub fn name(&self) -> String {
        let c = match self.series {
            Series::X => 'x',
            Series::Y => 'y',
        };
        format!("{c}_{}_{}_{}", self.order, self.row, self.col)
    }

    fn m2_name(&self) -> String {
        let c = match self.series {
            Series::X => 'x',
            Series::Y => 'y',
        };
        format!("{c}_({},{},{})", self.order, self.row, self.col)
    }

    fn parse(s: &str) -> Option<Self> {
        let mut parts = s.split('_');
        let series = match parts.next()? {
            "x" => Series::X,
            "y" => Series::Y,
            _ => return None,
        };
        let order = parts.next()?.parse().ok()?;
        let row = parts.next()?.parse().ok()?;
        let col = parts.next()?.parse().ok()?;
        if parts.next().is_some() || row == 0 || col == 0 {
            return None;
        }
        Some(JetVar { series, order, row, col })
    }
}

/// Sorted multiset of variables. Ordered by degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<JetVar>);

impl Monomial {
    pub fn new(mut vars: Vec<JetVar>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[JetVar] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the jet variables with distinct, sorted monomials and
/// nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPoly<F: Field> {
    field: F,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> JetPoly<F> {
    pub fn zero(field: F) -> Self {
        JetPoly { field, terms: Vec::new() }
    }

    pub fn var(field: F, v: JetVar) -> Self {
        JetPoly { field, terms: vec![(field.one(), Monomial::new(vec![v]))] }
    }

    /// Builds a polynomial from arbitrary terms, merging and sorting.
    pub fn from_terms(field: F, mut terms: Vec<(F::Elem, Monomial)>) -> Self {
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((acc, last)) if *last == m => *acc = field.add(acc, &c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !field.is_zero(c));
        JetPoly { field, terms: out }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self::from_terms(self.field, t)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        JetPoly { field: f, terms: self.terms.iter().map(|(c, m)| (f.neg(c), m.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut t = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                let mut vars = m1.0.clone();
                vars.extend_from_slice(&m2.0);
                t.push((f.mul(c1, c2), Monomial::new(vars)));
            }
        }
        Self::from_terms(f, t)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: &JetVar) -> Self {
        let f = self.field;
        let mut t = Vec::new();
        for (c, m) in &self.terms {
            let count = m.0.iter().filter(|w| *w == v).count();
            if count == 0 {
                continue;
            }
            let mut vars = m.0.clone();
            let pos = vars.iter().position(|w| w == v).unwrap();
            vars.remove(pos);
            t.push((f.mul(c, &f.from_i64(count as i64)), Monomial::new(vars)));
        }
        Self::from_terms(f, t)
    }

    pub fn eval(&self, value: impl Fn(&JetVar) -> F::Elem) -> F::Elem {
        let f = self.field;
        self.terms.iter().fold(f.zero(), |acc, (c, m)| {
            let prod = m.0.iter().fold(c.clone(), |p, v| f.mul(&p, &value(v)));
            f.add(&acc, &prod)
        })
    }

    fn write_with(&self, out: &mut String, name: impl Fn(&JetVar) -> String) {
        let f = self.field;
        if self.terms.is_empty() {
            out.push('0');
            return;
        }
        for (idx, (c, m)) in self.terms.iter().enumerate() {
            let signed = f.format_signed(c);
            let (neg, mag) = match signed.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, signed),
            };
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.0.is_empty() {
                factors.push(mag);
            }
            factors.extend(m.0.iter().map(&name));
            out.push_str(&factors.join("*"));
        }
    }

    /// Parses the `±c*v1*v2 ± ...` form written by the generic export.
    pub fn parse(field: F, line: &str) -> std::result::Result<Self, String> {
        let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero(field));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err("empty term".into());
            }
            let mut coeff = field.one();
            let mut vars = Vec::new();
            for factor in term.split('*') {
                if let Some(v) = JetVar::parse(factor) {
                    vars.push(v);
                } else {
                    let c = field.parse_elem(factor).map_err(|e| e.to_string())?;
                    coeff = field.mul(&coeff, &c);
                }
            }
            if neg {
                coeff = field.neg(&coeff);
            }
            terms.push((coeff, Monomial::new(vars)));
        }
        Ok(Self::from_terms(field, terms))
    }
}

impl<F: Field> fmt::Display for JetPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_with(&mut s, JetVar::name);
        f.write_str(&s)
    }
}

/// The generators `f^(s)_{ij}` for fixed `n` and `k`, ordered by `s`, then
/// `(i, j)` row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetIdeal<F: Field> {
    pub field: F,
    pub n: usize,
    pub k: usize,
    pub gens: Vec<JetPoly<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFlavor {
    GenericText,
    Macaulay2,
    Singular,
}

impl std::str::FromStr for ExportFlavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "generic" | "generic-text" | "text" => Ok(ExportFlavor::GenericText),
            "m2" | "macaulay2" | "m2-flavored" => Ok(ExportFlavor::Macaulay2),
            "singular" | "singular-flavored" => Ok(ExportFlavor::Singular),
            other => Err(format!("unknown export flavor `{other}`")),
        }
    }
}

/// Index of `f^(s)_{ij}` (one-based `i`, `j`) in [`generators`].
pub fn generator_index(n: usize, s: usize, i: usize, j: usize) -> usize {
    s * n * n + (i - 1) * n + (j - 1)
}

pub fn generators<F: Field>(field: F, n: usize, k: usize) -> JetIdeal<F> {
    assert!(n >= 1, "n must be positive");
    let one = field.one();
    let minus = field.neg(&one);
    let mut gens = Vec::with_capacity(n * n * (k + 1));
    for s in 0..=k {
        for i in 1..=n {
            for j in 1..=n {
                let mut terms = Vec::new();
                for a in 0..=s {
                    let b = s - a;
                    for l in 1..=n {
                        terms.push((one.clone(), Monomial::new(vec![JetVar::x(a, i, l), JetVar::y(b, l, j)])));
                        terms.push((minus.clone(), Monomial::new(vec![JetVar::y(a, i, l), JetVar::x(b, l, j)])));
                    }
                }
                gens.push(JetPoly::from_terms(field, terms));
            }
        }
    }
    JetIdeal { field, n, k, gens }
}

fn check_point<F: Field>(n: usize, k: usize, a: &MatPoly<F>, b: &MatPoly<F>) -> Result<()> {
    for m in [a, b] {
        if m.n() != n || m.k() != k {
            return Err(Error::ShapeMismatch(format!(
                "point has (n={}, k={}), ideal has (n={n}, k={k})",
                m.n(),
                m.k()
            )));
        }
    }
    Ok(())
}

fn point_value<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, v: &JetVar) -> F::Elem {
    let m = match v.series {
        Series::X => a,
        Series::Y => b,
    };
    m.coeff(v.order)[(v.row - 1, v.col - 1)].clone()
}

impl<F: Field> JetIdeal<F> {
    pub fn evaluate(&self, a: &MatPoly<F>, b: &MatPoly<F>) -> Result<Vec<F::Elem>> {
        check_point(self.n, self.k, a, b)?;
        Ok(self.gens.iter().map(|g| g.eval(|v| point_value(a, b, v))).collect())
    }

    pub fn num_vars(&self) -> usize {
        2 * self.n * self.n * (self.k + 1)
    }

    pub fn variables(&self) -> Vec<JetVar> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::with_capacity(self.num_vars());
        for series in [Series::X, Series::Y] {
            for order in 0..=k {
                for row in 1..=n {
                    for col in 1..=n {
                        out.push(JetVar { series, order, row, col });
                    }
                }
            }
        }
        out
    }

    pub fn export(&self, flavor: ExportFlavor) -> String {
        let (n, k) = (self.n, self.k);
        let ch = self.field.characteristic();
        let header = format!("jetideal n={n} k={k} char={ch}");
        let mut out = String::new();
        match flavor {
            ExportFlavor::GenericText => {
                out.push_str(&header);
                out.push('\n');
                out.push_str(&format!("vars x_s_i_j y_s_i_j s=0..{k} i,j=1..{n}\n"));
                for g in &self.gens {
                    g.write_with(&mut out, JetVar::name);
                    out.push('\n');
                }
            }
            ExportFlavor::Macaulay2 => {
                out.push_str(&format!("-- {header}\n"));
                let coeffs = if ch == 0 { "QQ".to_string() } else { format!("ZZ/{ch}") };
                let vars: Vec<String> = self.variables().iter().map(JetVar::m2_name).collect();
                out.push_str(&format!("R = {coeffs}[{}];\n", vars.join(", ")));
                out.push_str("I = ideal(\n");
                self.write_gen_lines(&mut out, JetVar::m2_name);
                out.push_str(");\n");
            }
            ExportFlavor::Singular => {
                out.push_str(&format!("// {header}\n"));
                let vars: Vec<String> = self.variables().iter().map(JetVar::name).collect();
                out.push_str(&format!("ring R = {ch}, ({}), dp;\n", vars.join(", ")));
                out.push_str("ideal I =\n");
                self.write_gen_lines(&mut out, JetVar::name);
                out.push_str(";\n");
            }
        }
        out
    }

    fn write_gen_lines(&self, out: &mut String, name: impl Fn(&JetVar) -> String + Copy) {
        for (idx, g) in self.gens.iter().enumerate() {
            out.push_str("  ");
            g.write_with(out, name);
            if idx + 1 < self.gens.len() {
                out.push(',');
            }
            out.push('\n');
        }
    }

    /// Reads back the generic-text export.
    pub fn parse_generic(field: F, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut n = None;
        let mut k = None;
        let mut ch = None;
        let mut words = header.split_whitespace();
        if words.next() != Some("jetideal") {
            return Err(Error::Parse { line: 1, msg: "expected `jetideal` header".into() });
        }
        for w in words {
            let (key, val) = w.split_once('=').ok_or(Error::Parse { line: 1, msg: format!("bad field `{w}`") })?;
            let v: u64 = val.parse().map_err(|_| Error::Parse { line: 1, msg: format!("bad value `{val}`") })?;
            match key {
                "n" => n = Some(v as usize),
                "k" => k = Some(v as usize),
                "char" => ch = Some(v),
                _ => return Err(Error::Parse { line: 1, msg: format!("unknown key `{key}`") }),
            }
        }
        let (Some(n), Some(k), Some(ch)) = (n, k, ch) else {
            return Err(Error::Parse { line: 1, msg: "header needs n, k and char".into() });
        };
        if ch != field.characteristic() {
            return Err(Error::Parse { line: 1, msg: format!("characteristic {ch} does not match the field") });
        }
        match lines.next() {
            Some((_, l)) if l.starts_with("vars") => {}
            _ => return Err(Error::Parse { line: 2, msg: "expected `vars` line".into() }),
        }
        let mut gens = Vec::new();
        for (idx, l) in lines {
            let g = JetPoly::parse(field, l).map_err(|msg| Error::Parse { line: idx + 1, msg })?;
            gens.push(g);
        }
        Ok(JetIdeal { field, n, k, gens })
    }
}

/// Jacobian of the generators at `(A, B)`, read off the bilinear structure:
/// `d f^(s)_ij / d x^(a)_pq = [p=i] y^(s-a)_qj - [q=j] y^(s-a)_ip` and
/// `d f^(s)_ij / d y^(b)_pq = [q=j] x^(s-b)_ip - [p=i] x^(s-b)_qj`.
pub fn jacobian<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Matrix<F> {
    let (n, k) = (a.n(), a.k());
    let f = a.field();
    let block = n * n * (k + 1);
    let mut jac = Matrix::zeros(f, block, 2 * block);
    for s in 0..=k {
        for i in 0..n {
            for j in 0..n {
                let row = s * n * n + i * n + j;
                for o in 0..=s {
                    let (ys, xs) = (b.coeff(s - o), a.coeff(s - o));
                    for q in 0..n {
                        // p = i
                        let cx = o * n * n + i * n + q;
                        jac[(row, cx)] = f.add(&jac[(row, cx)], &ys[(q, j)]);
                        let cy = block + o * n * n + i * n + q;
                        jac[(row, cy)] = f.sub(&jac[(row, cy)], &xs[(q, j)]);
                    }
                    for p in 0..n {
                        // q = j
                        let cx = o * n * n + p * n + j;
                        jac[(row, cx)] = f.sub(&jac[(row, cx)], &ys[(i, p)]);
                        let cy = block + o * n * n + p * n + j;
                        jac[(row, cy)] = f.add(&jac[(row, cy)], &xs[(i, p)]);
                    }
                }
            }
        }
    }
    jac
}

/// `2 n^2 (k+1) - rank(Jacobian)` at a point of the jet scheme.
pub fn jacobian_tangent_dim<F: Field>(n: usize, k: usize, a: &MatPoly<F>, b: &MatPoly<F>) -> Result<usize> {
    check_point(n, k, a, b)?;
    let c = a.commutator(b);
    if let Some(index) = c.flatten().iter().position(|v| !a.field().is_zero(v)) {
        return Err(Error::NotOnScheme { index });
    }
    Ok(2 * n * n * (k + 1) - jacobian(a, b).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::random_commutant_element;
    use crate::field::{PrimeField, Rationals};
    use crate::sampling::{random_matpoly, random_matpoly_with_a0, random_one_regular, rng_from_seed};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn one_by_one_generators_vanish() {
        for k in 0..4 {
            assert!(generators(fp(), 1, k).gens.iter().all(JetPoly::is_zero));
        }
    }

    #[test]
    fn two_by_two_classical() {
        let f = fp();
        let ideal = generators(f, 2, 0);
        assert_eq!(ideal.gens.len(), 4);
        // (XY - YX)_{11} = x12 y21 - x21 y12
        let want = JetPoly::var(f, JetVar::x(0, 1, 2))
            .mul(&JetPoly::var(f, JetVar::y(0, 2, 1)))
            .sub(&JetPoly::var(f, JetVar::x(0, 2, 1)).mul(&JetPoly::var(f, JetVar::y(0, 1, 2))));
        assert_eq!(ideal.gens[0], want);
    }

    #[test]
    fn counts_and_bidegree() {
        let ideal = generators(fp(), 3, 2);
        assert_eq!(ideal.gens.len(), 27);
        for (idx, g) in ideal.gens.iter().enumerate() {
            let s = idx / 9;
            for (_, m) in g.terms() {
                let v = m.vars();
                assert_eq!(v.len(), 2);
                assert_eq!((v[0].series, v[1].series), (Series::X, Series::Y));
                assert_eq!(v[0].order + v[1].order, s);
            }
        }
    }

    #[test]
    fn export_small_cases() {
        let f = fp();
        let text = generators(f, 1, 0).export(ExportFlavor::GenericText);
        assert_eq!(text, "jetideal n=1 k=0 char=32003\nvars x_s_i_j y_s_i_j s=0..0 i,j=1..1\n0\n");
        let text = generators(f, 2, 0).export(ExportFlavor::GenericText);
        let lines: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(
            lines,
            vec![
                "x_0_1_2*y_0_2_1 - x_0_2_1*y_0_1_2",
                "x_0_1_1*y_0_1_2 - x_0_1_2*y_0_1_1 + x_0_1_2*y_0_2_2 - x_0_2_2*y_0_1_2",
                "-x_0_1_1*y_0_2_1 + x_0_2_1*y_0_1_1 - x_0_2_1*y_0_2_2 + x_0_2_2*y_0_2_1",
                "-x_0_1_2*y_0_2_1 + x_0_2_1*y_0_1_2",
            ]
        );
        let m2 = generators(f, 2, 1).export(ExportFlavor::Macaulay2);
        assert!(m2.starts_with("-- jetideal n=2 k=1 char=32003\nR = ZZ/32003[x_(0,1,1), "));
        assert!(m2.ends_with(");\n"));
        let sing = generators(Rationals, 2, 1).export(ExportFlavor::Singular);
        assert!(sing.contains("ring R = 0, (x_0_1_1, "));
    }

    #[test]
    fn generic_round_trip() {
        for (n, k) in [(1, 0), (2, 0), (2, 2), (3, 1)] {
            let ideal = generators(fp(), n, k);
            let text = ideal.export(ExportFlavor::GenericText);
            assert_eq!(JetIdeal::parse_generic(fp(), &text).unwrap(), ideal);
            let q = generators(Rationals, n, k);
            assert_eq!(JetIdeal::parse_generic(Rationals, &q.export(ExportFlavor::GenericText)).unwrap(), q);
        }
    }

    #[test]
    fn parse_coefficients() {
        let q = Rationals;
        let p = JetPoly::parse(q, "-3/2*x_0_1_1*y_1_2_2 + 5*x_0_1_1 - x_1_1_1").unwrap();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.to_string(), "5*x_0_1_1 - x_1_1_1 - 3/2*x_0_1_1*y_1_2_2");
    }

    #[test]
    fn tangent_dims_at_small_points() {
        let f = fp();
        let z = MatPoly::zero(f, 2, 0);
        assert_eq!(jacobian_tangent_dim(2, 0, &z, &z).unwrap(), 8);
        let a = MatPoly::constant(Matrix::diagonal(f, &[1, 2]), 0);
        let b = MatPoly::constant(Matrix::diagonal(f, &[5, 7]), 0);
        assert_eq!(jacobian(&a, &b).rank(), 2);
        assert_eq!(jacobian_tangent_dim(2, 0, &a, &b).unwrap(), 6);
        let mut rng = rng_from_seed(9);
        let a = random_matpoly_with_a0(random_one_regular(f, &mut rng, 3), &mut rng, 1);
        let b = random_commutant_element(&a, &mut rng);
        assert_eq!(jacobian_tangent_dim(3, 1, &a, &b).unwrap(), 24);
        let c = random_matpoly(f, &mut rng, 3, 1);
        assert!(matches!(jacobian_tangent_dim(3, 1, &a, &c), Err(Error::NotOnScheme { .. })));
    }

    /// Jacobian via formal differentiation of each generator.
    fn symbolic_jacobian(ideal: &JetIdeal<PrimeField>, a: &MatPoly<PrimeField>, b: &MatPoly<PrimeField>) -> Matrix<PrimeField> {
        let vars = ideal.variables();
        let mut m = Matrix::zeros(ideal.field, ideal.gens.len(), vars.len());
        for (r, g) in ideal.gens.iter().enumerate() {
            for (c, v) in vars.iter().enumerate() {
                m[(r, c)] = g.derivative(v).eval(|w| point_value(a, b, w));
            }
        }
        m
    }

    /// Matrix of `(dA, dB) -> [dA, B] + [A, dB]`.
    fn linearized_map(a: &MatPoly<PrimeField>, b: &MatPoly<PrimeField>) -> Matrix<PrimeField> {
        let (n, k) = (a.n(), a.k());
        let f = a.field();
        let block = n * n * (k + 1);
        let mut cols = Vec::with_capacity(2 * block);
        for idx in 0..2 * block {
            let mut unit = vec![0u64; block];
            unit[idx % block] = 1;
            let e = MatPoly::unflatten(f, n, k, &unit);
            let img = if idx < block { e.commutator(b) } else { a.commutator(&e) };
            cols.push(img.flatten());
        }
        Matrix::from_columns(f, block, &cols)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn trace_of_generators_vanishes(n in 1usize..5, k in 0usize..4) {
            let ideal = generators(fp(), n, k);
            for s in 0..=k {
                let mut tr = JetPoly::zero(fp());
                for i in 1..=n {
                    tr = tr.add(&ideal.gens[generator_index(n, s, i, i)]);
                }
                prop_assert!(tr.is_zero());
            }
        }

        #[test]
        fn evaluation_matches_commutator(seed in any::<u64>(), n in 1usize..4, k in 0usize..3, commuting in any::<bool>()) {
            let f = fp();
            let mut rng = rng_from_seed(seed);
            let a = random_matpoly(f, &mut rng, n, k);
            let b = if commuting { random_commutant_element(&a, &mut rng) } else { random_matpoly(f, &mut rng, n, k) };
            let ideal = generators(f, n, k);
            let vals = ideal.evaluate(&a, &b).unwrap();
            prop_assert_eq!(vals, a.commutator(&b).flatten());
        }

        #[test]
        fn jacobian_oracles(seed in any::<u64>(), n in 1usize..4, k in 0usize..3) {
            let f = fp();
            let mut rng = rng_from_seed(seed);
            let a = random_matpoly(f, &mut rng, n, k);
            let b = random_commutant_element(&a, &mut rng);
            let ideal = generators(f, n, k);
            let jac = jacobian(&a, &b);
            prop_assert_eq!(&jac, &symbolic_jacobian(&ideal, &a, &b));
            prop_assert_eq!(jac.rank(), linearized_map(&a, &b).rank());
        }

        #[test]
        fn tangent_dim_on_regular_locus(seed in any::<u64>(), n in 1usize..4, k in 0usize..3) {
            let f = fp();
            let mut rng = rng_from_seed(seed);
            let a = random_matpoly_with_a0(random_one_regular(f, &mut rng, n), &mut rng, k);
            let b = random_commutant_element(&a, &mut rng);
            prop_assert_eq!(jacobian_tangent_dim(n, k, &a, &b).unwrap(), (n * n + n) * (k + 1));
        }
    }
}
