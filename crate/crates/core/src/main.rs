use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jetpairs::commutant::{
    ad_image_contains, commutant_basis, cross_commutator_sum, extend_pair, filtration_dims, is_one_regular, lift_pair,
    random_commutant_element, thm24_conditions, triple_algebra_dim,
};
use jetpairs::io::{parse_matpoly, parse_pair, write_matpoly, write_pair};
use jetpairs::irr3::{certify_batch, certify_closure, sample_pair, PairCase, Terminal};
use jetpairs::jetideal::{generators, jacobian_tangent_dim, ExportFlavor};
use jetpairs::redwitness::{bounds, empirical_dim_w, in_w_shape, reducible_table, sample_w_point, thresholds, BlockShape};
use jetpairs::sampling::{
    derive_seed, random_matpoly, random_matpoly_with_a0, random_matrix, random_non_one_regular, random_one_regular,
    run_samples,
};
use jetpairs::symcalc::b_from_q;
use jetpairs::{Error, Field, FieldSpec, MatPoly, Matrix, PrimeField, Rationals, UniPoly};

#[derive(Parser, Debug)]
#[command(name = "jetpairs", version, about = "Exact checks on jets of commuting matrix pairs")]
struct Cli {
    /// Base field: a prime (e.g. 32003) or Q.
    #[arg(long, global = true, default_value = "32003")]
    field: FieldSpec,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Samples per configuration in sweeps.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Also emit one `record ...` line per sample.
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Randomized sweeps of the structural identities.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Commutant basis and dimension of a supplied or random A(t).
    Commutant(CommutantArgs),
    /// Extend a commuting pair by one order.
    Lift(LiftArgs),
    /// Jet ideal generators and tangent dimensions.
    Jetideal {
        #[command(subcommand)]
        what: JetCmd,
    },
    /// Reducibility bounds and the block family sampler.
    Red {
        #[command(subcommand)]
        what: RedCmd,
    },
    /// Closure certificates for 3x3 pairs.
    Irr3 {
        #[command(subcommand)]
        what: Irr3Cmd,
    },
    /// Dimension of F[A, B, t] and its t-adic filtration.
    Algdim(AlgdimArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Equivalent characterizations of 1-regularity.
    Thm24(SweepArgs),
    /// b_from_q against direct evaluation of sum q_j(A) t^j.
    Lemma23(SweepArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Matrix size; all of 2, 3, 4 when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Truncation order; all of 1, 2, 3 when omitted.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct CommutantArgs {
    /// matpoly file holding A(t).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Print the basis elements.
    #[arg(long)]
    basis: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Demo {
    Remark28,
}

#[derive(Args, Debug)]
struct LiftArgs {
    /// Pair file holding A(t) and B(t).
    #[arg(long)]
    input: Option<PathBuf>,
    /// matpoly file (k = 0) holding the next coefficient of A; random when omitted.
    #[arg(long)]
    a_next: Option<PathBuf>,
    #[arg(long, value_enum)]
    demo: Option<Demo>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum JetCmd {
    /// Print the generators of the jet ideal.
    Export {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// generic, m2 or singular.
        #[arg(long, default_value = "generic")]
        format: ExportFlavor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tangent dimension from the Jacobian rank.
    Tangent {
        /// Pair file; random points with 1-regular A_0 when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum RedCmd {
    /// First reducible block shape for each n up to n-max.
    Table {
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
    /// Dimension bounds for one block shape.
    Bounds(ShapeArgs),
    /// Random commuting pair in the block family, as a pair file.
    Sample {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tangent-based dimension estimate for the block family.
    EmpiricalDim {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    k: u64,
}

#[derive(Subcommand, Debug)]
enum Irr3Cmd {
    /// Certificate for a pair file, or a batch over random pairs.
    Certify {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Truncation order for the batch; cycles through 1..=3 when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Write the certificate text here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// In batch mode, print every certificate.
        #[arg(long)]
        show: bool,
    },
}

#[derive(Args, Debug)]
struct AlgdimArgs {
    /// Pair file; sweep over random pairs with 1-regular A_0 when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Truncation order for the sweep; 1 and 2 when omitted.
    #[arg(long)]
    k: Option<usize>,
}

enum Failure {
    Input(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 3,
            Failure::Infeasible(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::ShapeMismatch(_) | Error::Field(_) | Error::TruncationOrder { .. } => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Infeasible(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Accumulated output plus the overall verdict.
struct Report {
    text: String,
    records: bool,
    failed: bool,
    /// Set when stdout carries a data file, so verdicts become comments.
    data_output: bool,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn record(&mut self, s: impl AsRef<str>) {
        if self.records {
            self.line(format!("record {}", s.as_ref()));
        }
    }

    fn check(&mut self, ok: bool, s: impl AsRef<str>) {
        let prefix = if self.data_output { "# " } else { "" };
        self.line(format!("{prefix}{} {}", if ok { "PASS" } else { "FAIL" }, s.as_ref()));
        self.failed |= !ok;
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CmdResult {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn mixed_a<F: Field, R: rand::Rng>(f: F, n: usize, k: usize, i: usize, rng: &mut R) -> MatPoly<F> {
    let a0 = if i.is_multiple_of(2) || n < 2 { random_one_regular(f, rng, n) } else { random_non_one_regular(f, rng, n) };
    random_matpoly_with_a0(a0, rng, k)
}

fn u_point<F: Field, R: rand::Rng>(f: F, n: usize, k: usize, rng: &mut R) -> (MatPoly<F>, MatPoly<F>) {
    let a = random_matpoly_with_a0(random_one_regular(f, rng, n), rng, k);
    let b = random_commutant_element(&a, rng);
    (a, b)
}

fn configs(n: Option<usize>, k: Option<usize>) -> Vec<(usize, usize)> {
    let ns = n.map_or(vec![2, 3, 4], |n| vec![n]);
    let ks = k.map_or(vec![1, 2, 3], |k| vec![k]);
    ns.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).collect()
}

fn config_seed(seed: u64, n: usize, k: usize) -> u64 {
    derive_seed(seed, (n as u64) << 32 | k as u64)
}

fn verify_thm24<F: Field>(f: F, cli: &Cli, args: &SweepArgs, r: &mut Report) -> CmdResult {
    for (n, k) in configs(args.n, args.k) {
        let reports = run_samples(cli.samples, config_seed(cli.seed, n, k), |i, rng| thm24_conditions(&mixed_a(f, n, k, i, rng)));
        for (i, rep) in reports.iter().enumerate() {
            let bits: String = rep.conditions().iter().map(|&c| if c { '1' } else { '0' }).collect();
            r.record(format!(
                "verify-thm24 n={n} k={k} sample={i} conditions={bits} commutant_dim={} algebra_dim={} ok={}",
                rep.commutant_dim,
                rep.dim_fat,
                rep.consistent()
            ));
        }
        let regular = reports.iter().filter(|x| x.one_regular).count();
        let ok = reports.iter().filter(|x| x.consistent()).count();
        r.check(
            ok == reports.len(),
            format!(
                "thm24 n={n} k={k}: {ok}/{} samples consistent ({regular} with 1-regular A_0, commutant dim n(k+1) = {})",
                reports.len(),
                n * (k + 1)
            ),
        );
    }
    Ok(())
}

fn verify_lemma23<F: Field>(f: F, cli: &Cli, args: &SweepArgs, r: &mut Report) -> CmdResult {
    for (n, k) in configs(args.n, args.k) {
        let oks = run_samples(cli.samples, config_seed(cli.seed, n, k), |_, rng| {
            let a = random_matpoly(f, rng, n, k);
            let qs: Vec<UniPoly<F>> =
                (0..=k).map(|_| UniPoly::new(f, (0..n + 2).map(|_| f.random(rng)).collect())).collect();
            let mut direct = MatPoly::zero(f, n, k);
            for (j, q) in qs.iter().enumerate() {
                direct = direct.add(&MatPoly::eval_poly(q, &a).shift_up(j));
            }
            b_from_q(&qs, &a) == direct
        });
        for (i, ok) in oks.iter().enumerate() {
            r.record(format!("verify-lemma23 n={n} k={k} sample={i} ok={ok}"));
        }
        let good = oks.iter().filter(|&&x| x).count();
        r.check(good == oks.len(), format!("lemma23 n={n} k={k}: {good}/{} samples b_from_q = sum q_j(A) t^j", oks.len()));
    }
    Ok(())
}

fn commutant_cmd<F: Field>(f: F, cli: &Cli, args: &CommutantArgs, r: &mut Report) -> CmdResult {
    let a = match &args.input {
        Some(p) => parse_matpoly(f, &read_text(p)?)?,
        None => {
            let mut rng = jetpairs::sampling::rng_from_seed(cli.seed);
            random_matpoly(f, &mut rng, args.n, args.k)
        }
    };
    let (n, k) = (a.n(), a.k());
    let basis = commutant_basis(&a);
    let regular = is_one_regular(a.coeff(0));
    r.data_output = args.basis;
    let prefix = if args.basis { "# " } else { "" };
    r.line(format!("{prefix}commutant n={n} k={k} dim={} one_regular={regular} n(k+1)={}", basis.dim(), n * (k + 1)));
    r.record(format!("commutant n={n} k={k} dim={} one_regular={regular}", basis.dim()));
    if args.basis {
        for (i, v) in basis.vectors().iter().enumerate() {
            r.line(format!("# basis element {i}"));
            r.text.push_str(&write_matpoly(&MatPoly::unflatten(f, n, k, v)));
        }
    }
    if regular {
        r.check(basis.dim() == n * (k + 1), "commutant dimension of a 1-regular A(t) is n(k+1)");
    }
    Ok(())
}

fn lift_cmd<F: Field>(f: F, cli: &Cli, args: &LiftArgs, r: &mut Report) -> CmdResult {
    if let Some(Demo::Remark28) = args.demo {
        let x = MatPoly::constant(Matrix::unit(f, 2, 0, 1), 1).shift_up(1);
        let y = MatPoly::constant(Matrix::unit(f, 2, 1, 0), 1).shift_up(1);
        r.line("lift demo: A = t e12, B = t e21, n=2, k=1, A_2 = 0");
        let res = lift_pair(&x, &y, &Matrix::zeros(f, 2, 2));
        let infeasible = matches!(res, Err(Error::Infeasible(_)));
        r.record(format!("lift-demo infeasible={infeasible}"));
        r.check(infeasible, "order-2 equation [A_1, B_1] + [A_0, B_2] = 0 has no solution since A_0 = 0 and [e12, e21] != 0 (expected infeasible)");
        return Ok(());
    }
    if let Some(p) = &args.input {
        let (a, b) = parse_pair(f, &read_text(p)?)?;
        let n = a.n();
        let a_next = match &args.a_next {
            Some(q) => {
                let m = parse_matpoly(f, &read_text(q)?)?;
                if m.n() != n || m.k() != 0 {
                    return Err(Failure::Input("--a-next must be a single n x n matrix (k = 0)".into()));
                }
                m.coeff(0).clone()
            }
            None => random_matrix(f, &mut jetpairs::sampling::rng_from_seed(cli.seed), n, n),
        };
        let b_next = lift_pair(&a, &b, &a_next)?;
        let (a2, b2) = extend_pair(&a, &b, &a_next, &b_next);
        let zero = a2.commutator(&b2).is_zero();
        r.data_output = true;
        r.line(format!("# lifted pair, order {}", a2.k()));
        r.text.push_str(&write_pair(&a2, &b2));
        r.check(zero, format!("lifted pair commutes modulo t^{}", a2.k() + 1));
        return Ok(());
    }
    let (n, k) = (args.n, args.k);
    let outcomes = run_samples(cli.samples, config_seed(cli.seed, n, k), |_, rng| {
        let (a, b) = u_point(f, n, k, rng);
        let cross = ad_image_contains(a.coeff(0), &cross_commutator_sum(&a, &b));
        let a_next = random_matrix(f, rng, n, n);
        let lifted = lift_pair(&a, &b, &a_next)
            .map(|bn| {
                let (a2, b2) = extend_pair(&a, &b, &a_next, &bn);
                a2.commutator(&b2).is_zero()
            })
            .unwrap_or(false);
        (lifted, cross)
    });
    for (i, (l, c)) in outcomes.iter().enumerate() {
        r.record(format!("lift n={n} k={k} sample={i} lifted={l} cross_sum_in_image={c}"));
    }
    let lifted = outcomes.iter().filter(|o| o.0).count();
    let cross = outcomes.iter().filter(|o| o.1).count();
    let total = outcomes.len();
    r.check(lifted == total, format!("lift n={n} k={k}: {lifted}/{total} pairs with 1-regular A_0 lift to order {}", k + 1));
    r.check(cross == total, format!("lift n={n} k={k}: {cross}/{total} sums [A_1,B_k]+...+[A_k,B_1] lie in im ad(A_0)"));
    Ok(())
}

fn jetideal_cmd<F: Field>(f: F, cli: &Cli, what: &JetCmd, r: &mut Report) -> CmdResult {
    match what {
        JetCmd::Export { n, k, format, out } => {
            if *n == 0 {
                return Err(Failure::Infeasible("n must be positive".into()));
            }
            let text = generators(f, *n, *k).export(*format);
            match out {
                Some(p) => {
                    write_text(p, &text)?;
                    r.line(format!("wrote {} generators to {}", n * n * (k + 1), p.display()));
                }
                None => r.text.push_str(&text),
            }
        }
        JetCmd::Tangent { input: Some(p), .. } => {
            let (a, b) = parse_pair(f, &read_text(p)?)?;
            let (n, k) = (a.n(), a.k());
            let dim = jacobian_tangent_dim(n, k, &a, &b)?;
            let regular = is_one_regular(a.coeff(0));
            r.line(format!("tangent n={n} k={k} dim={dim} one_regular={regular} (n^2+n)(k+1)={}", (n * n + n) * (k + 1)));
            if regular {
                r.check(dim == (n * n + n) * (k + 1), "tangent dimension at a point with 1-regular A_0");
            }
        }
        JetCmd::Tangent { input: None, n, k } => {
            let (n, k) = (*n, *k);
            let expected = (n * n + n) * (k + 1);
            let dims = run_samples(cli.samples, config_seed(cli.seed, n, k), |_, rng| {
                let (a, b) = u_point(f, n, k, rng);
                jacobian_tangent_dim(n, k, &a, &b).ok()
            });
            for (i, d) in dims.iter().enumerate() {
                r.record(format!("tangent n={n} k={k} sample={i} dim={}", d.map_or("error".into(), |d| d.to_string())));
            }
            let good = dims.iter().filter(|d| **d == Some(expected)).count();
            r.check(
                good == dims.len(),
                format!("tangent n={n} k={k}: {good}/{} points have dimension (n^2+n)(k+1) = {expected}", dims.len()),
            );
        }
    }
    Ok(())
}

fn shape_of(s: &ShapeArgs) -> Result<BlockShape, Failure> {
    Ok(BlockShape::new(s.a, s.b, s.k)?)
}

fn red_cmd<F: Field>(f: F, cli: &Cli, what: &RedCmd, r: &mut Report) -> CmdResult {
    match what {
        RedCmd::Table { k, n_max } => {
            if *k == 0 {
                return Err(Failure::Infeasible("k must be positive".into()));
            }
            let t = thresholds(*k);
            r.line(format!(
                "thresholds k={k}: mu={} beta={} N={} (mu = ceil(2(k+1) + sqrt(15(k+1)^2 - 4(k+2))/2), beta = ceil(2(k+1) + sqrt(15(k+1)^2 - 4(k+1) + 12)/2), N = ceil(4 beta - (k+5)/2))",
                t.mu, t.beta, t.n_k
            ));
            let table = reducible_table(*k, *n_max);
            for (n, w) in &table {
                match w {
                    Some((a, b)) => r.line(format!(
                        "n={n} reducible witness a={a} b={b} ineq=b^2+(k+1-2a)b+3a(k+1)-k-2={}",
                        jetpairs::redwitness::inequality_value(*a, *b, *k)
                    )),
                    None => r.line(format!("n={n} no witness")),
                }
                r.record(format!(
                    "red-table k={k} n={n} witness={}",
                    w.map_or("none".into(), |(a, b)| format!("{a},{b}"))
                ));
            }
            match table.iter().find(|(_, w)| w.is_some()) {
                Some((n, _)) => r.line(format!("first reducible n = {n}")),
                None => r.line(format!("no reducible n up to {n_max}")),
            }
            let missing = table.iter().filter(|(n, w)| *n as i128 >= t.n_k && w.is_none()).count();
            r.check(missing == 0, format!("every n in [N(k), {n_max}] has a witness"));
        }
        RedCmd::Bounds(s) => {
            let rep = bounds(shape_of(s)?);
            let BlockShape { a, b, k } = rep.shape;
            let n = rep.shape.n();
            r.line(format!("shape a={a} b={b} k={k} n=3a+b={n}"));
            r.line(format!("dimW >= 12a^2 + 10ab + b^2 + (k-1)n^2 + k = {}", rep.dim_w_bound));
            r.line(format!("dim C(A_0) = 3a^2 + 2ab + b^2 = {}", rep.dim_c_a0));
            r.line(format!("dimV >= n^2 - dim C(A_0) + dimW + 2 = {}", rep.dim_v_bound));
            r.line(format!("expected (k+1)(n^2+n) = {}", rep.expected_dim));
            r.line(format!("b^2 + (k+1-2a)b + 3a(k+1) - k - 2 = {}", rep.inequality_value));
            r.line(format!("Delta_k(a) = 4a^2 - 16(k+1)a + (k+1)^2 + 4(k+2) = {}", rep.delta));
            r.line(format!("reducible witness: {}", rep.reducible));
            r.record(format!(
                "red-bounds a={a} b={b} k={k} dim_w={} dim_v={} expected={} ineq={} reducible={}",
                rep.dim_w_bound, rep.dim_v_bound, rep.expected_dim, rep.inequality_value, rep.reducible
            ));
        }
        RedCmd::Sample { shape, out } => {
            let s = shape_of(shape)?;
            let (a, b) = sample_w_point(f, s, cli.seed)?;
            let text = write_pair(&a, &b);
            match out {
                Some(p) => write_text(p, &text)?,
                None => {
                    r.data_output = true;
                    r.text.push_str(&text);
                }
            }
            r.check(a.commutator(&b).is_zero() && in_w_shape(s, &a, &b), "sampled pair commutes and has the block shape");
        }
        RedCmd::EmpiricalDim { shape, trials } => {
            let s = shape_of(shape)?;
            let bound = bounds(s).dim_w_bound;
            let d = empirical_dim_w(f, s, *trials, cli.seed);
            r.record(format!("red-empirical a={} b={} k={} trials={trials} dim={d} bound={bound}", s.a, s.b, s.k));
            r.check(
                d as i128 >= bound,
                format!("shape a={} b={} k={}: empirical dimension {d} >= bound 12a^2+10ab+b^2+(k-1)n^2+k = {bound}", s.a, s.b, s.k),
            );
        }
    }
    Ok(())
}

fn terminal_label<F: Field>(t: &Terminal<F>) -> String {
    match t {
        Terminal::InU => "in_U".into(),
        Terminal::SpectrumSplit { dims, .. } => format!("spectrum_split({},{})", dims.0, dims.1),
        Terminal::Stalled(s) => format!("stalled({s})"),
    }
}

fn irr3_cmd<F: Field>(f: F, cli: &Cli, what: &Irr3Cmd, r: &mut Report) -> CmdResult {
    let Irr3Cmd::Certify { input, k, out, show } = what;
    if let Some(p) = input {
        let (a, b) = parse_pair(f, &read_text(p)?)?;
        let cert = certify_closure(&a, &b, cli.seed)?;
        let text = cert.to_text();
        match out {
            Some(o) => write_text(o, &text)?,
            None => {
                r.data_output = true;
                r.text.push_str(&text);
            }
        }
        let verified = cert.replay().map(|x| x.terminal_verified).unwrap_or(false);
        r.check(
            verified,
            format!("certificate with {} moves, terminal {}, replayed", cert.moves.len(), terminal_label(&cert.terminal)),
        );
        return Ok(());
    }
    let pairs = run_samples(cli.samples, cli.seed, |i, rng| {
        let case = PairCase::ALL[i % PairCase::ALL.len()];
        let kk = k.unwrap_or(1 + (i / PairCase::ALL.len()) % 3);
        sample_pair(f, case, kk, rng)
    });
    let certs = certify_batch(&pairs, cli.seed);
    let mut good = 0;
    for (i, c) in certs.iter().enumerate() {
        let case = PairCase::ALL[i % PairCase::ALL.len()];
        let (ok, label, moves) = match c {
            Ok(c) => (c.validate().is_ok(), terminal_label(&c.terminal), c.moves.len()),
            Err(e) => (false, format!("error({e})"), 0),
        };
        good += ok as usize;
        r.record(format!("irr3 sample={i} case={case:?} moves={moves} terminal={label} ok={ok}"));
        if *show {
            if let Ok(c) = c {
                r.line(format!("# sample {i} ({case:?})"));
                r.text.push_str(&c.to_text());
            }
        }
    }
    r.check(good == certs.len(), format!("irr3: {good}/{} certificates replay with a verified terminal", certs.len()));
    Ok(())
}

fn algdim_cmd<F: Field>(f: F, cli: &Cli, args: &AlgdimArgs, r: &mut Report) -> CmdResult {
    if let Some(p) = &args.input {
        let (a, b) = parse_pair(f, &read_text(p)?)?;
        let (n, k) = (a.n(), a.k());
        let d = triple_algebra_dim(&a, &b);
        let filt = filtration_dims(f, n, k, &[a, b]);
        r.line(format!("algdim n={n} k={k} dim F[A,B,t]={d} n(k+1)={} filtration={filt:?}", n * (k + 1)));
        return Ok(());
    }
    let n = 3;
    let ks = args.k.map_or(vec![1, 2], |k| vec![k]);
    for k in ks {
        let res = run_samples(cli.samples, config_seed(cli.seed, n, k), |_, rng| {
            let (a, b) = u_point(f, n, k, rng);
            (triple_algebra_dim(&a, &b), filtration_dims(f, n, k, &[a, b]))
        });
        for (i, (d, filt)) in res.iter().enumerate() {
            r.record(format!("algdim n={n} k={k} sample={i} dim={d} filtration={filt:?}"));
        }
        let good = res.iter().filter(|(d, filt)| *d == n * (k + 1) && filt.iter().all(|&x| x == n)).count();
        r.check(
            good == res.len(),
            format!("algdim n={n} k={k}: {good}/{} pairs have dim F[A,B,t] = n(k+1) = {} and filtration [n; k+1]", res.len(), n * (k + 1)),
        );
    }
    Ok(())
}

fn run<F: Field>(f: F, cli: &Cli, r: &mut Report) -> CmdResult {
    match &cli.cmd {
        Cmd::Verify { what: VerifyCmd::Thm24(a) } => verify_thm24(f, cli, a, r),
        Cmd::Verify { what: VerifyCmd::Lemma23(a) } => verify_lemma23(f, cli, a, r),
        Cmd::Commutant(a) => commutant_cmd(f, cli, a, r),
        Cmd::Lift(a) => lift_cmd(f, cli, a, r),
        Cmd::Jetideal { what } => jetideal_cmd(f, cli, what, r),
        Cmd::Red { what } => red_cmd(f, cli, what, r),
        Cmd::Irr3 { what } => irr3_cmd(f, cli, what, r),
        Cmd::Algdim(a) => algdim_cmd(f, cli, a, r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report { text: String::new(), records: cli.records, failed: false, data_output: false };
    let res = match cli.field {
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run(f, &cli, &mut report),
            Err(e) => Err(Failure::Input(e.to_string())),
        },
        FieldSpec::Rationals => run(Rationals, &cli, &mut report),
    };
    print!("{}", report.text);
    match res {
        Err(e) => {
            let (Failure::Input(m) | Failure::Infeasible(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
        Ok(()) if report.failed => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
    }
}
