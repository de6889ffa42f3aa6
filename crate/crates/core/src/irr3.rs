//! Closure certificates for commuting pairs of `3 x 3` jets.
//!
//! A certificate is a chain of moves that each preserve the set of commuting
//! pairs (or, for `Deform`, exhibit the pair as a limit of a commuting line),
//! ending at a pair whose constant term is 1-regular or has a split spectrum.
//!
//! Entry names follow the usual layout
//!
//! ```text
//! A = a b c     B = a' b' c'
//!     d e f         d' e' f'
//!     g h i         g' h' i'
//! ```

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::commutant::{is_one_regular, random_commutant_element};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::{write_matrix_rows, Lines};
use crate::matrix::Matrix;
use crate::poly::{squarefree_split_info, UniPoly};
use crate::sampling::{derive_seed, random_invertible, random_matpoly, random_matpoly_with_a0, random_one_regular, rng_from_seed};
use crate::truncmat::{poly_combine, CombineMode, MatPoly};

pub type Pair<F> = (MatPoly<F>, MatPoly<F>);

/// Draws of the deformation parameter before giving up.
pub const LAMBDA_BUDGET: usize = 16;
const MAX_ROUNDS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub enum Move<F: Field> {
    Swap,
    /// `A <- A + p(t) I`
    ShiftA(UniPoly<F>),
    /// `B <- B + p(t) I`
    ShiftB(UniPoly<F>),
    /// `B <- B + p(t) A`
    ShearB(UniPoly<F>),
    /// `A <- A (1 + q(t))`, `q(0) = 0`
    ScaleA(UniPoly<F>),
    /// `(A, B) <- (H A H^-1, H B H^-1)`
    Conjugate { h: Matrix<F>, h_inv: Matrix<F> },
    /// `(A, B) <- (A + lambda X, B + lambda Y)` where the whole line commutes.
    Deform { x: MatPoly<F>, y: MatPoly<F>, lambda: F::Elem, note: String },
}

impl<F: Field> Move<F> {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Swap => "swap",
            Move::ShiftA(_) => "shift_a",
            Move::ShiftB(_) => "shift_b",
            Move::ShearB(_) => "shear_b",
            Move::ScaleA(_) => "scale_a",
            Move::Conjugate { .. } => "conjugate",
            Move::Deform { .. } => "deform",
        }
    }

    /// Applies the move, failing if the result does not commute.
    pub fn apply(&self, a: &MatPoly<F>, b: &MatPoly<F>) -> Result<Pair<F>> {
        let f = a.field();
        let zero = UniPoly::zero(f);
        let out = match self {
            Move::Swap => (b.clone(), a.clone()),
            Move::ShiftA(p) => poly_combine(a, b, p, &zero, CombineMode::ShiftA)?,
            Move::ShiftB(p) => poly_combine(a, b, p, &zero, CombineMode::ShiftB)?,
            Move::ShearB(p) => poly_combine(a, b, p, &zero, CombineMode::ShearB)?,
            Move::ScaleA(q) => poly_combine(a, b, &zero, q, CombineMode::ScaleA)?,
            Move::Conjugate { h, h_inv } => {
                if h.rows() != a.n() || h.mul(h_inv) != Matrix::identity(f, a.n()) {
                    return Err(Error::Precondition("conjugating matrix is not invertible with the given inverse".into()));
                }
                (a.conjugate(h, h_inv), b.conjugate(h, h_inv))
            }
            Move::Deform { x, y, lambda, .. } => (a.try_add(&x.scale(lambda))?, b.try_add(&y.scale(lambda))?),
        };
        if !out.0.try_commutator(&out.1)?.is_zero() {
            return Err(Error::NonCommuting);
        }
        Ok(out)
    }

    /// Inverse move at truncation order `k`; `None` for `Deform`.
    pub fn inverse(&self, k: usize) -> Option<Move<F>> {
        Some(match self {
            Move::Swap => Move::Swap,
            Move::ShiftA(p) => Move::ShiftA(p.neg()),
            Move::ShiftB(p) => Move::ShiftB(p.neg()),
            Move::ShearB(p) => Move::ShearB(p.neg()),
            Move::ScaleA(q) => {
                let f = q.field();
                let inv = UniPoly::one(f).add(q).inverse_trunc(k)?;
                Move::ScaleA(inv.sub(&UniPoly::one(f)))
            }
            Move::Conjugate { h, h_inv } => Move::Conjugate { h: h_inv.clone(), h_inv: h.clone() },
            Move::Deform { .. } => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Terminal<F: Field> {
    /// Final `A_0` is 1-regular.
    InU,
    /// Final `A_0` has at least two eigenvalues in the base field; `dims`
    /// are the ranks of the spectral idempotent and its complement, and
    /// `lambda` is the last deformation parameter used, if any.
    SpectrumSplit { lambda: Option<F::Elem>, dims: (usize, usize) },
    Stalled(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCertificate<F: Field> {
    pub input: Pair<F>,
    pub moves: Vec<Move<F>>,
    pub terminal: Terminal<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayReport<F: Field> {
    pub final_pair: Pair<F>,
    pub steps: usize,
    /// The terminal claim was re-derived from the final pair.
    pub terminal_verified: bool,
}

impl<F: Field> ClosureCertificate<F> {
    pub fn is_stalled(&self) -> bool {
        matches!(self.terminal, Terminal::Stalled(_))
    }

    /// Re-applies every move from the input, checking commutation after
    /// each one, then re-checks the terminal claim.
    pub fn replay(&self) -> Result<ReplayReport<F>> {
        let (mut a, mut b) = self.input.clone();
        if !a.try_commutator(&b)?.is_zero() {
            return Err(Error::NonCommuting);
        }
        for m in &self.moves {
            (a, b) = m.apply(&a, &b)?;
        }
        let terminal_verified = match &self.terminal {
            Terminal::InU => is_one_regular(a.coeff(0)),
            Terminal::SpectrumSplit { dims, .. } => {
                let roots = base_eigenvalues(a.coeff(0));
                roots.len() >= 2 && spectral_idempotent(&a, &b).map(|(_, d)| d) == Some(*dims)
            }
            Terminal::Stalled(_) => false,
        };
        Ok(ReplayReport { final_pair: (a, b), steps: self.moves.len(), terminal_verified })
    }

    /// Replays and requires a verified, non-stalled terminal.
    pub fn validate(&self) -> Result<()> {
        let r = self.replay()?;
        if r.terminal_verified {
            Ok(())
        } else {
            Err(Error::Infeasible(format!("terminal not verified: {:?}", self.terminal)))
        }
    }

    pub fn to_text(&self) -> String {
        let (a, b) = &self.input;
        let f = a.field();
        let mut out = String::new();
        let charac = f.characteristic();
        writeln!(out, "closure-certificate {} {} {}", a.n(), a.k(), charac).unwrap();
        out.push_str("input\n");
        write_matpoly_rows(&mut out, a);
        write_matpoly_rows(&mut out, b);
        let poly_line = |p: &UniPoly<F>| -> String {
            (0..=a.k()).map(|i| f.format_elem(&p.coeff(i))).collect::<Vec<_>>().join(" ")
        };
        for m in &self.moves {
            match m {
                Move::Swap => out.push_str("move swap\n"),
                Move::ShiftA(p) | Move::ShiftB(p) | Move::ShearB(p) | Move::ScaleA(p) => {
                    writeln!(out, "move {} {}", m.name(), poly_line(p)).unwrap();
                }
                Move::Conjugate { h, h_inv } => {
                    out.push_str("move conjugate\n");
                    write_matrix_rows(&mut out, h);
                    write_matrix_rows(&mut out, h_inv);
                }
                Move::Deform { x, y, lambda, note } => {
                    writeln!(out, "move deform {} {}", f.format_elem(lambda), note.replace('\n', " ")).unwrap();
                    write_matpoly_rows(&mut out, x);
                    write_matpoly_rows(&mut out, y);
                }
            }
        }
        match &self.terminal {
            Terminal::InU => out.push_str("terminal in_u\n"),
            Terminal::SpectrumSplit { lambda, dims } => {
                let l = lambda.as_ref().map_or("-".to_string(), |l| f.format_elem(l));
                writeln!(out, "terminal spectrum_split {l} {} {}", dims.0, dims.1).unwrap();
            }
            Terminal::Stalled(reason) => writeln!(out, "terminal stalled {}", reason.replace('\n', " ")).unwrap(),
        }
        out
    }

    pub fn parse(field: F, text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (ln, header) = lines.expect_line("a certificate header")?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "closure-certificate" {
            return Err(lines.err(ln, "expected `closure-certificate n k char`"));
        }
        let n: usize = toks[1].parse().map_err(|_| lines.err(ln, "bad n"))?;
        let k: usize = toks[2].parse().map_err(|_| lines.err(ln, "bad k"))?;
        if toks[3] != field.characteristic().to_string() {
            return Err(lines.err(ln, format!("certificate is over characteristic {}", toks[3])));
        }
        let (ln, l) = lines.expect_line("`input`")?;
        if l != "input" {
            return Err(lines.err(ln, "expected `input`"));
        }
        let a = lines.read_matpoly_body(field, n, k)?;
        let b = lines.read_matpoly_body(field, n, k)?;
        let mut moves = Vec::new();
        loop {
            let (ln, l) = lines.expect_line("a move or terminal")?;
            let mut parts = l.splitn(3, ' ');
            let kind = parts.next().unwrap_or("");
            let name = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("").trim();
            let poly = |lines: &Lines| -> Result<UniPoly<F>> {
                let cs = rest
                    .split_whitespace()
                    .map(|t| field.parse_elem(t).map_err(|e| lines.err(ln, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                if cs.len() != k + 1 {
                    return Err(lines.err(ln, format!("expected {} coefficients", k + 1)));
                }
                Ok(UniPoly::new(field, cs))
            };
            match (kind, name) {
                ("move", "swap") => moves.push(Move::Swap),
                ("move", "shift_a") => moves.push(Move::ShiftA(poly(&lines)?)),
                ("move", "shift_b") => moves.push(Move::ShiftB(poly(&lines)?)),
                ("move", "shear_b") => moves.push(Move::ShearB(poly(&lines)?)),
                ("move", "scale_a") => moves.push(Move::ScaleA(poly(&lines)?)),
                ("move", "conjugate") => {
                    let h = lines.read_matrix(field, n)?;
                    let h_inv = lines.read_matrix(field, n)?;
                    moves.push(Move::Conjugate { h, h_inv });
                }
                ("move", "deform") => {
                    let (lam, note) = rest.split_once(' ').unwrap_or((rest, ""));
                    let lambda = field.parse_elem(lam).map_err(|e| lines.err(ln, e.to_string()))?;
                    let x = lines.read_matpoly_body(field, n, k)?;
                    let y = lines.read_matpoly_body(field, n, k)?;
                    moves.push(Move::Deform { x, y, lambda, note: note.to_string() });
                }
                ("terminal", "in_u") => return Ok(ClosureCertificate { input: (a, b), moves, terminal: Terminal::InU }),
                ("terminal", "spectrum_split") => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if t.len() != 3 {
                        return Err(lines.err(ln, "expected `spectrum_split lambda r s`"));
                    }
                    let lambda = match t[0] {
                        "-" => None,
                        s => Some(field.parse_elem(s).map_err(|e| lines.err(ln, e.to_string()))?),
                    };
                    let r: usize = t[1].parse().map_err(|_| lines.err(ln, "bad rank"))?;
                    let s: usize = t[2].parse().map_err(|_| lines.err(ln, "bad rank"))?;
                    let terminal = Terminal::SpectrumSplit { lambda, dims: (r, s) };
                    return Ok(ClosureCertificate { input: (a, b), moves, terminal });
                }
                ("terminal", "stalled") => {
                    let terminal = Terminal::Stalled(rest.to_string());
                    return Ok(ClosureCertificate { input: (a, b), moves, terminal });
                }
                _ => return Err(lines.err(ln, format!("unknown line `{l}`"))),
            }
        }
    }
}

fn write_matpoly_rows<F: Field>(out: &mut String, a: &MatPoly<F>) {
    for m in a.coeffs() {
        write_matrix_rows(out, m);
    }
}

fn require_three<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Result<()> {
    if a.n() != 3 || b.n() != 3 || a.k() != b.k() {
        return Err(Error::Precondition("expected a pair of 3x3 jets of equal order".into()));
    }
    if !a.commutator(b).is_zero() {
        return Err(Error::NonCommuting);
    }
    Ok(())
}

/// Distinct eigenvalues of `m` lying in the base field.
fn base_eigenvalues<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    let f = m.field();
    f.base_roots(&m.charpoly())
}

/// Unique eigenvalue `c` when `charpoly(m) = (x - c)^n`.
fn single_eigenvalue<F: Field>(m: &Matrix<F>) -> Option<F::Elem> {
    let f = m.field();
    let chi = m.charpoly();
    let roots = f.base_roots(&chi);
    if roots.len() != 1 {
        return None;
    }
    let lin = UniPoly::linear_root(f, &roots[0]);
    (lin.pow(m.rows() as u32) == chi).then(|| roots[0].clone())
}

fn is_rank_one_nilpotent<F: Field>(m: &Matrix<F>) -> bool {
    m.rank() == 1 && m.mul(m).is_zero()
}

/// Spectral idempotent `E = u(A) g(A)^(k+1)` for the coprime splitting
/// `charpoly(A_0) = g h`, `g` the primary part at the first base-field root.
/// Returns `E` and `(rank E_0, n - rank E_0)` after checking `E^2 = E` and
/// that `E` commutes with both members of the pair.
pub fn spectral_idempotent<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Option<(MatPoly<F>, (usize, usize))> {
    let f = a.field();
    let chi = a.coeff(0).charpoly();
    let roots = f.base_roots(&chi);
    if roots.len() < 2 {
        return None;
    }
    let lin = UniPoly::linear_root(f, &roots[0]);
    let mut g = UniPoly::one(f);
    let mut h = chi;
    while let Some(q) = h.div_exact(&lin) {
        g = g.mul(&lin);
        h = q;
    }
    let m = (a.k() + 1) as u32;
    let gm = g.pow(m);
    let (d, u, _) = gm.ext_gcd(&h.pow(m));
    if !d.is_constant() {
        return None;
    }
    let e = MatPoly::eval_poly(&u.mul(&gm), a);
    if e.mul(&e) != e || !e.commutator(a).is_zero() || !e.commutator(b).is_zero() {
        return None;
    }
    let r = e.coeff(0).rank();
    Some((e, (r, a.n() - r)))
}

/// Brings a commuting pair with rank-one nilpotent `A_0` to the normal form
/// `A_0 = e_12`, `a = a' = 0`, `b = 1`, `b' = 0`.
pub fn normalize<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Result<(Pair<F>, Vec<Move<F>>)> {
    require_three(a, b)?;
    let f = a.field();
    let k = a.k();
    let a0 = a.coeff(0);
    if !is_rank_one_nilpotent(a0) {
        return Err(Error::Precondition("A_0 is not a rank-one nilpotent".into()));
    }
    let mut moves = Vec::new();
    let e12 = Matrix::unit(f, 3, 0, 1);
    let mut conj = None;
    if *a0 != e12 {
        // columns w = A_0 v, v, u with u spanning ker A_0 modulo w
        let basis = |j: usize| (0..3).map(|i| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
        let v = (0..3).map(basis).find(|v| a0.mul_vec(v).iter().any(|x| !f.is_zero(x))).unwrap();
        let w = a0.mul_vec(&v);
        let kernel = a0.kernel_basis();
        let p = kernel
            .vectors()
            .iter()
            .map(|u| Matrix::from_columns(f, 3, &[w.clone(), v.clone(), u.clone()]))
            .find(|p| !f.is_zero(&p.determinant()))
            .expect("kernel of a rank-one nilpotent spans a complement");
        let h = p.inverse().unwrap();
        conj = Some(Move::Conjugate { h, h_inv: p });
    }
    let mut pair = (a.clone(), b.clone());
    let mut push = |m: Move<F>, pair: &mut Pair<F>| -> Result<()> {
        *pair = m.apply(&pair.0, &pair.1)?;
        moves.push(m);
        Ok(())
    };
    if let Some(m) = conj {
        push(m, &mut pair)?;
    }
    let entry = |m: &MatPoly<F>, i, j| m.entry_poly(i, j).truncate(k);
    let aa = entry(&pair.0, 0, 0);
    if !aa.is_zero() {
        push(Move::ShiftA(aa.neg()), &mut pair)?;
    }
    let ap = entry(&pair.1, 0, 0);
    if !ap.is_zero() {
        push(Move::ShiftB(ap.neg()), &mut pair)?;
    }
    let bb = entry(&pair.0, 0, 1);
    let q = bb.inverse_trunc(k).expect("b(0) = 1 after conjugation").sub(&UniPoly::one(f));
    if !q.is_zero() {
        push(Move::ScaleA(q), &mut pair)?;
    }
    let bp = entry(&pair.1, 0, 1);
    if !bp.is_zero() {
        push(Move::ShearB(bp.neg()), &mut pair)?;
    }
    debug_assert!(is_normalized(&pair.0, &pair.1));
    Ok((pair, moves))
}

pub fn is_normalized<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> bool {
    let f = a.field();
    let k = a.k();
    a.n() == 3
        && *a.coeff(0) == Matrix::unit(f, 3, 0, 1)
        && a.entry_poly(0, 0).is_zero()
        && b.entry_poly(0, 0).is_zero()
        && a.entry_poly(0, 1).truncate(k) == UniPoly::one(f)
        && b.entry_poly(0, 1).is_zero()
}

/// The four polynomial relations forced by commutation in normal form.
pub fn derived_relations_check<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> bool {
    if !is_normalized(a, b) {
        return false;
    }
    let k = a.k();
    let e = |m: &MatPoly<F>, i, j| m.entry_poly(i, j).truncate(k);
    let (c, ee, g, h, i) = (e(a, 0, 2), e(a, 1, 1), e(a, 2, 0), e(a, 2, 1), e(a, 2, 2));
    let (cp, dp, ep, fp, gp, hp, ip) = (e(b, 0, 2), e(b, 1, 0), e(b, 1, 1), e(b, 1, 2), e(b, 2, 0), e(b, 2, 1), e(b, 2, 2));
    let m = |x: &UniPoly<F>, y: &UniPoly<F>| x.mul_trunc(y, k);
    dp == m(&cp, &g).sub(&m(&c, &gp))
        && ep == m(&cp, &h).sub(&m(&c, &hp))
        && fp == m(&cp, &i).sub(&m(&c, &ip))
        && gp
            == m(&i, &hp)
                .sub(&m(&ip, &h))
                .add(&m(&cp, &m(&h, &h)))
                .sub(&m(&c, &m(&h, &hp)))
                .sub(&m(&ee, &hp))
}

/// Deformation directions for a normalized pair:
///
/// ```text
/// X = 0          0  0      Y = 0      0  0
///     i - e - ch 1  0          -h c'  0  c'
///     -h         0  1          0      0  0
/// ```
///
/// Checked: `[X, Y] = 0` and `AY + XB = BX + YA`.
pub fn build_xy<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> Result<Pair<F>> {
    if !derived_relations_check(a, b) {
        return Err(Error::Precondition("pair is not a normalized commuting pair".into()));
    }
    let f = a.field();
    let k = a.k();
    let e = |m: &MatPoly<F>, i, j| m.entry_poly(i, j).truncate(k);
    let (c, ee, h, i) = (e(a, 0, 2), e(a, 1, 1), e(a, 2, 1), e(a, 2, 2));
    let cp = e(b, 0, 2);
    let one = UniPoly::one(f);
    let mut x = MatPoly::zero(f, 3, k);
    x.set_entry_poly(1, 0, &i.sub(&ee).sub(&c.mul_trunc(&h, k)));
    x.set_entry_poly(1, 1, &one);
    x.set_entry_poly(2, 0, &h.neg());
    x.set_entry_poly(2, 2, &one);
    let mut y = MatPoly::zero(f, 3, k);
    y.set_entry_poly(1, 0, &h.mul_trunc(&cp, k).neg());
    y.set_entry_poly(1, 2, &cp);
    if !xy_identities_hold(a, b, &x, &y) {
        return Err(Error::Infeasible("deformation identities failed".into()));
    }
    Ok((x, y))
}

/// `[X, Y] = 0` and `AY + XB = BX + YA`; with `[A, B] = 0` these are the
/// three coefficients of `[A + lambda X, B + lambda Y]` in `lambda`.
pub fn xy_identities_hold<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, x: &MatPoly<F>, y: &MatPoly<F>) -> bool {
    a.commutator(b).is_zero()
        && x.commutator(y).is_zero()
        && a.mul(y).add(&x.mul(b)) == b.mul(x).add(&y.mul(a))
}

/// Whether a `3 x 3` matrix has at least two distinct eigenvalues over the
/// closure: either two in the base field or a squarefree characteristic
/// polynomial.
fn has_two_eigenvalues<F: Field>(m: &Matrix<F>) -> bool {
    let info = squarefree_split_info(&m.charpoly());
    info.distinct_base_roots >= 2 || info.is_squarefree
}

/// Samples nonzero `lambda` until `A_0 + lambda X_0` has two distinct
/// eigenvalues.
pub fn spectrum_splits<F: Field, R: Rng + ?Sized>(
    a: &MatPoly<F>,
    x: &MatPoly<F>,
    samples: usize,
    rng: &mut R,
) -> (bool, Option<F::Elem>) {
    let f = a.field();
    for _ in 0..samples {
        let lambda = f.random_nonzero(rng);
        if has_two_eigenvalues(&a.coeff(0).add(&x.coeff(0).scale(&lambda))) {
            return (true, Some(lambda));
        }
    }
    (false, None)
}

/// Builds a closure certificate for a commuting pair of `3 x 3` jets.
pub fn certify_closure<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>, seed: u64) -> Result<ClosureCertificate<F>> {
    require_three(a, b)?;
    let f = a.field();
    let k = a.k();
    let mut rng = rng_from_seed(seed);
    let mut moves: Vec<Move<F>> = Vec::new();
    let mut pair = (a.clone(), b.clone());
    let mut last_lambda: Option<F::Elem> = None;
    let finish = |moves, terminal| ClosureCertificate { input: (a.clone(), b.clone()), moves, terminal };

    macro_rules! step {
        ($m:expr) => {{
            let m = $m;
            pair = m.apply(&pair.0, &pair.1)?;
            moves.push(m);
        }};
    }

    for _ in 0..MAX_ROUNDS {
        let (a0, b0) = (pair.0.coeff(0).clone(), pair.1.coeff(0).clone());
        if is_one_regular(&a0) {
            return Ok(finish(moves, Terminal::InU));
        }
        if base_eigenvalues(&a0).len() >= 2 {
            return Ok(match spectral_idempotent(&pair.0, &pair.1) {
                Some((_, dims)) => finish(moves, Terminal::SpectrumSplit { lambda: last_lambda, dims }),
                None => finish(moves, Terminal::Stalled("spectral idempotent failed".into())),
            });
        }
        if is_one_regular(&b0) || base_eigenvalues(&b0).len() >= 2 {
            step!(Move::Swap);
            continue;
        }
        // both constant terms now have a single eigenvalue; move it to 0
        let Some(la) = single_eigenvalue(&a0) else {
            return Ok(finish(moves, Terminal::Stalled("irrational spectrum".into())));
        };
        let Some(lb) = single_eigenvalue(&b0) else {
            return Ok(finish(moves, Terminal::Stalled("irrational spectrum".into())));
        };
        if !f.is_zero(&la) {
            step!(Move::ShiftA(UniPoly::constant(f, f.neg(&la))));
        }
        if !f.is_zero(&lb) {
            step!(Move::ShiftB(UniPoly::constant(f, f.neg(&lb))));
        }
        let (a0, b0) = (pair.0.coeff(0).clone(), pair.1.coeff(0).clone());
        if is_rank_one_nilpotent(&a0) {
            let (normal, norm_moves) = normalize(&pair.0, &pair.1)?;
            for m in norm_moves {
                step!(m);
            }
            debug_assert_eq!(pair, normal);
            let (x, y) = build_xy(&pair.0, &pair.1)?;
            let (ok, lambda) = spectrum_splits(&pair.0, &x, LAMBDA_BUDGET, &mut rng);
            if !ok {
                return Ok(finish(moves, Terminal::Stalled("no splitting lambda within budget".into())));
            }
            let lambda = lambda.unwrap();
            last_lambda = Some(lambda.clone());
            step!(Move::Deform { x, y, lambda, note: "rank-one normal form".into() });
            continue;
        }
        if !a0.is_zero() {
            // nilpotent and not 1-regular, so rank one; unreachable
            return Ok(finish(moves, Terminal::Stalled("unexpected constant term".into())));
        }
        if !b0.is_zero() {
            step!(Move::Swap);
            continue;
        }
        let lambda = f.random_nonzero(&mut rng);
        last_lambda = Some(lambda.clone());
        match (pair.0.valuation(), pair.1.is_zero()) {
            (None, true) => {
                let x = MatPoly::constant(Matrix::jordan_nilpotent(f, 3), k);
                step!(Move::Deform { x, y: MatPoly::zero(f, 3, k), lambda, note: "zero pair, X = J_3".into() });
            }
            (None, false) => step!(Move::Swap),
            (Some(r), _) => {
                let y = pair.0.shift_down(r);
                step!(Move::Deform { x: MatPoly::zero(f, 3, k), y, lambda, note: format!("Y = A shifted down by {r}") });
                step!(Move::Swap);
            }
        }
    }
    Ok(finish(moves, Terminal::Stalled("round limit reached".into())))
}

/// Structural families used to exercise every branch of the dispatcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairCase {
    OneRegular,
    SplitSpectrum,
    RankOneNilpotent,
    ZeroConstant,
}

impl PairCase {
    pub const ALL: [PairCase; 4] = [PairCase::OneRegular, PairCase::SplitSpectrum, PairCase::RankOneNilpotent, PairCase::ZeroConstant];
}

/// A random commuting `3 x 3` pair from the given family.
pub fn sample_pair<F: Field, R: Rng + ?Sized>(field: F, case: PairCase, k: usize, rng: &mut R) -> Pair<F> {
    let f = field;
    let conj = |m: Matrix<F>, rng: &mut R| {
        let h = random_invertible(f, rng, 3);
        h.mul(&m).mul(&h.inverse().unwrap())
    };
    match case {
        PairCase::OneRegular => {
            let a = random_matpoly_with_a0(random_one_regular(f, rng, 3), rng, k);
            let b = random_commutant_element(&a, rng);
            (a, b)
        }
        PairCase::SplitSpectrum => {
            let (x, y) = loop {
                let (x, y) = (f.random(rng), f.random(rng));
                if x != y {
                    break (x, y);
                }
            };
            let a0 = conj(Matrix::diagonal(f, &[x.clone(), x, y]), rng);
            let a = random_matpoly_with_a0(a0, rng, k);
            let b = random_commutant_element(&a, rng);
            (a, b)
        }
        PairCase::RankOneNilpotent => {
            let mut a0 = conj(Matrix::unit(f, 3, 0, 1), rng);
            if rng.gen_bool(0.5) {
                a0 = a0.add(&Matrix::scalar(f, 3, f.random(rng)));
            }
            let a = random_matpoly_with_a0(a0, rng, k);
            // B = q(A) + t Z with Z in the commutant keeps B_0 in F[A_0]
            let q = UniPoly::new(f, (0..3).map(|_| f.random(rng)).collect());
            let z = random_commutant_element(&a, rng);
            let b = MatPoly::eval_poly(&q, &a).add(&z.shift_up(1));
            if rng.gen_bool(0.5) {
                (a, b)
            } else {
                (b.add(&a.shift_up(1)), a)
            }
        }
        PairCase::ZeroConstant => {
            let p = random_matpoly(f, rng, 3, k);
            let q = random_commutant_element(&p, rng);
            let (a, b) = (p.shift_up(1), q.shift_up(1));
            match rng.gen_range(0..4) {
                0 => (MatPoly::zero(f, 3, k), MatPoly::zero(f, 3, k)),
                1 => (MatPoly::zero(f, 3, k), b),
                2 => (a, MatPoly::zero(f, 3, k)),
                _ => (a, b),
            }
        }
    }
}

/// Certifies a batch in parallel; per-pair seeds are derived from `seed`.
pub fn certify_batch<F: Field>(pairs: &[Pair<F>], seed: u64) -> Vec<Result<ClosureCertificate<F>>> {
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (a, b))| certify_closure(a, b, derive_seed(seed, i as u64)))
        .collect()
}
