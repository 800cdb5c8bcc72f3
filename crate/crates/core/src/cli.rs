//! Command-line front end: argument parsing, report assembly and the
//! exit-code contract. Every document carries `"schema": 1`.

use crate::charform::{lhs_series, rhs_series, series_numeric, shintani_verify};
use crate::cone::{check_partial_order, normal_form_traced, verify_cone, ConeTriple};
use crate::padic::{gauss_shell, gauss_shell_character_sum, verify_cells};
use crate::ratfun::{RatFun, Q};
use crate::wsformula::{
    check_dominant, invariance_report, l_value, l_value_numeric, normalization_closed_form,
    normalization_constant, Mode, NumericConfig,
};
use crate::zetafactors::{gamma_consistency, Context};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SHINTANI_THREADS";

pub const SCHEMA: u32 = 1;

/// Tolerance for numeric series and Gauss shell comparisons.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(
    name = "shintani",
    version,
    about = "Exact Whittaker-Shintani function calculator and verifier"
)]
pub struct Cli {
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate L(d, f).
    Eval(EvalArgs),
    /// Run one verification suite.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Reduce a cone triple to its normal form.
    Reduce(ReduceArgs),
    /// Coefficient table of both sides of the series identity.
    Series(SeriesArgs),
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Normalization constant against its closed form.
    Constant(Ranks),
    /// Gamma transformation law for every simple root.
    Gamma(Ranks),
    /// Invariance of the unnormalized value over Gamma.
    Invariance(InvarianceArgs),
    /// Series identity for n = m+1.
    Shintani(ShintaniArgs),
    /// Normal-form invariants, minimality and the order axioms.
    Cone(ConeArgs),
    /// Open-cell minor calculus on seeded random elements.
    Padic(PadicArgs),
    /// Gauss shell closed form against direct character sums.
    Gauss(GaussArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Ranks {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
}

impl Ranks {
    fn context(self) -> Result<Context> {
        Context::new(self.n, self.m)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Numeric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Residue field size for numeric evaluation.
    #[arg(long, default_value_t = 3.0)]
    pub q: f64,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

impl NumericArgs {
    fn config(&self, samples: usize) -> Result<NumericConfig> {
        if !(self.q > 1.0 && self.q.is_finite()) {
            return Err(Error::Invalid(format!(
                "q must be a finite number > 1, got {}",
                self.q
            )));
        }
        Ok(NumericConfig {
            samples,
            seed: self.seed,
            q: self.q,
            ..NumericConfig::default()
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    /// Comma-separated `d` (length m); zeros when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Comma-separated `f` (length n); zeros when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Include wall time (makes the document nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct InvarianceArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ShintaniArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    /// Truncation order.
    #[arg(long = "K", alias = "k", default_value_t = 4)]
    pub k: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ConeArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    /// Entry bound for exhaustive enumeration.
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    /// Randomly drawn triples for the step invariants.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PadicArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct GaussArgs {
    /// Comma-separated odd primes.
    #[arg(long, default_value = "3,5")]
    pub q: String,
    /// Check all `i, j` in `[-range, range]`.
    #[arg(long, default_value_t = 4)]
    pub range: i64,
}

#[derive(Args, Debug, Clone)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub ranks: Ranks,
    #[arg(long = "K", alias = "k", default_value_t = 4)]
    pub k: usize,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Emit `lhs,rhs,difference` rows instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

/// A finished run: the document to print and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub document: Output,
    pub passed: bool,
}

#[derive(Debug)]
pub enum Output {
    Json(Value),
    Csv(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("serializable document");
                s.push('\n');
                s
            }
            Output::Csv(s) => s.clone(),
        }
    }
}

/// Parses comma-separated integers; empty input is the empty vector.
pub fn parse_vector(what: &str, s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("{what}: cannot parse '{t}' as an integer")))
        })
        .collect()
}

fn vector_or_zeros(what: &str, s: &Option<String>, len: usize) -> Result<Vec<i64>> {
    let v = match s {
        Some(s) => parse_vector(what, s)?,
        None => vec![0; len],
    };
    if v.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: v.len(),
        });
    }
    Ok(v)
}

fn pair(ctx: Context, d: &Option<String>, f: &Option<String>) -> Result<(Vec<i64>, Vec<i64>)> {
    let d = vector_or_zeros("d", d, ctx.m)?;
    let f = vector_or_zeros("f", f, ctx.n)?;
    check_dominant("f", &f)?;
    check_dominant("d", &d)?;
    Ok((d, f))
}

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn doc(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(out), Value::Object(body)) = (&mut v, body) {
        out.extend(body);
    }
    v
}

fn sample_point(ctx: Context, cfg: &NumericConfig) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    cfg.sample(ctx.vars(), &mut rng)
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Outcome> {
    let start = Instant::now();
    let ctx = args.ranks.context()?;
    let (d, f) = pair(ctx, &args.d, &args.f)?;
    let mode: Mode = args.numeric.mode.into();
    let mut body = json!({
        "input": { "n": ctx.n, "m": ctx.m, "d": d, "f": f, "mode": mode },
    });
    match mode {
        Mode::Exact => {
            body["value"] = json!(l_value(ctx, &d, &f)?.to_text());
        }
        Mode::Numeric => {
            let cfg = args.numeric.config(1)?;
            let point = sample_point(ctx, &cfg);
            body["input"]["q"] = json!(cfg.q);
            body["input"]["seed"] = json!(cfg.seed);
            body["point"] = point.iter().copied().map(complex).collect();
            body["value"] = complex(l_value_numeric(ctx, &d, &f, &point)?);
        }
    }
    if args.timing {
        body["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(Outcome {
        document: Output::Json(doc("eval", body)),
        passed: true,
    })
}

pub fn cmd_verify(which: &Verify) -> Result<Outcome> {
    let (name, body, passed) = match which {
        Verify::Constant(r) => {
            let ctx = r.context()?;
            let c = normalization_constant(ctx)?;
            let closed = normalization_closed_form(ctx);
            let passed = c == closed;
            let body = json!({
                "n": ctx.n, "m": ctx.m,
                "constant": c.to_text(),
                "closed_form": closed.to_text(),
                "passed": passed,
            });
            ("constant", body, passed)
        }
        Verify::Gamma(r) => {
            let ctx = r.context()?;
            let roots = gamma_consistency(ctx)?;
            let passed = roots.iter().all(|x| x.passed);
            let failing: Vec<&str> = roots
                .iter()
                .filter(|x| !x.passed)
                .map(|x| x.root.as_str())
                .collect();
            let body =
                json!({ "n": ctx.n, "m": ctx.m, "roots": roots, "failing": failing, "passed": passed });
            ("gamma", body, passed)
        }
        Verify::Invariance(a) => {
            let ctx = a.ranks.context()?;
            let (d, f) = pair(ctx, &a.d, &a.f)?;
            let cfg = a.numeric.config(a.samples)?;
            let rep = invariance_report(ctx, &d, &f, a.numeric.mode.into(), &cfg)?;
            let passed = rep.all_passed;
            let failing: Vec<&str> = rep
                .generators
                .iter()
                .filter(|g| !g.passed)
                .map(|g| g.generator.as_str())
                .collect();
            let body = json!({
                "n": ctx.n, "m": ctx.m, "d": d, "f": f,
                "seed": cfg.seed, "q": cfg.q,
                "report": rep, "failing": failing, "passed": passed,
            });
            ("invariance", body, passed)
        }
        Verify::Shintani(a) => {
            let ctx = a.ranks.context()?;
            let rep = shintani_verify(ctx, a.k)?;
            let passed = rep.all_equal;
            let failing: Vec<usize> = rep
                .coefficients
                .iter()
                .filter(|c| !c.equal)
                .map(|c| c.index)
                .collect();
            let body = json!({ "report": rep, "failing_coefficients": failing, "passed": passed });
            ("shintani", body, passed)
        }
        Verify::Cone(a) => {
            let ctx = a.ranks.context()?;
            let rep = verify_cone(ctx, a.bound, a.samples, a.seed)?;
            let order = check_partial_order(ctx, a.bound)?;
            let passed = rep.all_passed && order.reflexive && order.antisymmetric && order.transitive;
            let body = json!({
                "triples_enumerated": rep.triples_enumerated,
                "normal_form": rep, "partial_order": order, "passed": passed,
            });
            ("cone", body, passed)
        }
        Verify::Padic(a) => {
            let rep = verify_cells(a.ranks.n, a.ranks.m, a.p, a.samples, a.seed)?;
            let passed = rep.all_passed;
            let failing: Vec<&str> = rep
                .checks
                .iter()
                .filter(|c| c.failures > 0)
                .map(|c| c.name)
                .collect();
            let body = json!({ "report": rep, "failing": failing, "passed": passed });
            ("padic", body, passed)
        }
        Verify::Gauss(a) => {
            let primes: Vec<u64> = parse_vector("q", &a.q)?
                .into_iter()
                .map(|p| u64::try_from(p).map_err(|_| Error::Invalid(format!("q must be positive, got {p}"))))
                .collect::<Result<_>>()?;
            let mut per_q = Vec::new();
            let mut passed = true;
            for p in primes {
                let (worst, at) = gauss_sweep(p, a.range)?;
                let ok = worst < NUMERIC_TOL;
                passed &= ok;
                per_q.push(json!({
                    "q": p, "cases": (2 * a.range + 1).pow(2),
                    "max_deviation": worst, "worst_case": { "i": at.0, "j": at.1 }, "passed": ok,
                }));
            }
            let body =
                json!({ "range": a.range, "tolerance": NUMERIC_TOL, "results": per_q, "passed": passed });
            ("gauss", body, passed)
        }
    };
    Ok(Outcome {
        document: Output::Json(doc(&format!("verify {name}"), body)),
        passed,
    })
}

/// Largest deviation between closed form and character sum, and where.
fn gauss_sweep(p: u64, range: i64) -> Result<(f64, (i64, i64))> {
    if p < 3 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    let mut worst = (0.0f64, (0, 0));
    for i in -range..=range {
        let x = Q::from_integer(p.into()).pow(i as i32);
        for j in -range..=range {
            let brute = gauss_shell_character_sum(&x, j, p)?;
            let exact = gauss_shell(i, j, p).to_f64().unwrap_or(f64::NAN);
            let dev = (brute - Complex64::new(exact, 0.0)).norm();
            if dev.is_nan() || dev > worst.0 {
                worst = (dev, (i, j));
            }
        }
    }
    Ok(worst)
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<Outcome> {
    let ctx = args.ranks.context()?;
    let t = ConeTriple {
        d: parse_vector("d", &args.d)?,
        a: parse_vector("a", &args.a)?,
        r: parse_vector("r", &args.r)?,
    };
    let (nf, trace) = normal_form_traced(ctx, &t)?;
    let body = json!({
        "n": ctx.n, "m": ctx.m,
        "input": t, "normal_form": nf,
        "trace_length": trace.len(), "trace": trace,
    });
    Ok(Outcome {
        document: Output::Json(doc("reduce", body)),
        passed: true,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_series(args: &SeriesArgs) -> Result<Outcome> {
    let ctx = args.ranks.context()?;
    let rows: Vec<(String, String, String, bool)> = match args.numeric.mode {
        ModeArg::Exact => {
            let lhs = lhs_series(ctx, args.k)?;
            let rhs = rhs_series(ctx, args.k)?;
            lhs.coefficients
                .iter()
                .zip(&rhs.coefficients)
                .map(|(a, b)| {
                    let diff: RatFun = a - b;
                    (a.to_text(), b.to_text(), diff.to_text(), diff.is_zero())
                })
                .collect()
        }
        ModeArg::Numeric => {
            let cfg = args.numeric.config(1)?;
            let point = sample_point(ctx, &cfg);
            let (lhs, rhs) = series_numeric(ctx, args.k, &point)?;
            let fmt = |z: Complex64| format!("{:.15e}{:+.15e}i", z.re, z.im);
            lhs.iter()
                .zip(&rhs)
                .map(|(&a, &b)| {
                    let diff = (a - b).norm();
                    (fmt(a), fmt(b), format!("{diff:.3e}"), diff < NUMERIC_TOL)
                })
                .collect()
        }
    };
    let passed = rows.iter().all(|r| r.3);
    let document = if args.csv {
        let mut s = String::from("lhs,rhs,difference\n");
        for (a, b, c, _) in &rows {
            s.push_str(&format!("{},{},{}\n", csv_field(a), csv_field(b), csv_field(c)));
        }
        Output::Csv(s)
    } else {
        let table: Vec<Value> = rows
            .iter()
            .enumerate()
            .map(|(l, (a, b, c, ok))| json!({ "index": l, "lhs": a, "rhs": b, "difference": c, "zero": ok }))
            .collect();
        let mode: Mode = args.numeric.mode.into();
        let mut body =
            json!({ "n": ctx.n, "m": ctx.m, "K": args.k, "mode": mode, "rows": table, "passed": passed });
        if mode == Mode::Numeric {
            body["q"] = json!(args.numeric.q);
            body["seed"] = json!(args.numeric.seed);
        }
        Output::Json(doc("series", body))
    };
    Ok(Outcome { document, passed })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify { which } => cmd_verify(which),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Series(a) => cmd_series(a),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Eval(_) => "eval",
        Command::Verify { .. } => "verify",
        Command::Reduce(_) => "reduce",
        Command::Series(_) => "series",
    }
}

/// Structured error document.
pub fn error_document(command: &str, e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    doc(
        command,
        json!({ "error": { "kind": kind, "message": e.to_string() } }),
    )
}

/// Configures the thread pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<()> {
    if let Ok(s) = std::env::var(THREADS_ENV) {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("{THREADS_ENV}={s} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code: 0 when every check
/// passed, 1 on a failed verification, 2 on invalid input or evaluation errors.
pub fn run(cli: Cli) -> i32 {
    let result = init_threads().and_then(|_| execute(&cli));
    let (text, code) = match result {
        Ok(o) => (o.document.render(), if o.passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            (Output::Json(error_document(command_name(&cli), &e)).render(), 2)
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
