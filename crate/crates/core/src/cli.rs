//! Command-line front end.
//!
//! One equation per invocation (`--alpha --beta --b --c`, or `--seq` to
//! build the coefficients from an integer sequence), or many via
//! `--batch FILE`. Text output mirrors the six-decimal listing style
//! `C= / A= / B= / W= / x_k=`; `--format json` emits the full-precision
//! machine form. Exit codes: 0 success, 2 usage error, 3 solver or
//! verification failure.

use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::algebra::{AlgebraContext, Quaternion};
use crate::sequences::{self, SequenceKind};
use crate::solver::{self, SolutionSet, SolveReport, SolverConfig};
use crate::verify;

/// Roots reported by the solver must stay within this backward error,
/// relative to max(1, norm(b)², norm(c)).
const VERIFY_RESIDUAL_TOL: f64 = 1e-8;
/// Componentwise agreement required between oracle and solver roots.
const ORACLE_MATCH_TOL: f64 = 1e-6;
const ORACLE_STARTS: usize = 48;
const ORACLE_TOL: f64 = 1e-10;

#[derive(Debug, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// One fully validated solve request.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub alpha: f64,
    pub beta: f64,
    pub b: Quaternion,
    pub c: Quaternion,
    pub want_verify: bool,
    pub format: OutputFormat,
    pub tol: Option<f64>,
}

#[derive(Debug, PartialEq)]
pub enum Command {
    Single(Box<Request>),
    Batch {
        path: PathBuf,
        want_verify: bool,
        format: OutputFormat,
        tol: Option<f64>,
    },
    /// --help / --version; the text to print.
    Informational(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "genquat",
    version,
    about = "Solve x^2 + b*x + c = 0 with quaternion coefficients in H(alpha, beta)",
    after_help = "Examples:\n  genquat --alpha -1 --beta -1 --b 0,1,0,0 --c 1,0,1,0\n  genquat --alpha -1 --beta -1 --seq fib --n 5 --m 10 --format json\n  genquat --batch equations.txt --verify"
)]
struct Args {
    /// Square of e1; must be negative
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,

    /// Square of e2; must be negative
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,

    /// Coefficient b as four comma-separated reals q1,q2,q3,q4
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,

    /// Coefficient c as four comma-separated reals q1,q2,q3,q4
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,

    /// Build b and c from a sequence: fib, pell, or lucas
    #[arg(long)]
    seq: Option<String>,

    /// Sequence index for b (with --seq)
    #[arg(long)]
    n: Option<usize>,

    /// Sequence index for c (with --seq)
    #[arg(long)]
    m: Option<usize>,

    /// Solve one request per line: `alpha beta b1,b2,b3,b4 c1,c2,c3,c4`
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Cross-check every root by residual and by the multi-start oracle
    #[arg(long)]
    verify: bool,

    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Override the resolvent-cubic root tolerance
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
}

fn parse_quaternion(text: &str) -> Result<Quaternion, UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(usage(format!(
            "expected four comma-separated components, got `{text}`"
        )));
    }
    let mut coords = [0.0; 4];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        let value: f64 = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("malformed number `{part}` in `{text}`")))?;
        if !value.is_finite() {
            return Err(usage(format!("non-finite component `{part}` in `{text}`")));
        }
        *slot = value;
    }
    Ok(Quaternion::from_coords(coords))
}

fn check_division_parameters(alpha: f64, beta: f64) -> Result<(), UsageError> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(usage("alpha and beta must be finite"));
    }
    if alpha >= 0.0 || beta >= 0.0 {
        return Err(usage(format!(
            "alpha and beta must both be negative for a division algebra (got alpha={alpha}, beta={beta})"
        )));
    }
    Ok(())
}

/// Parses an argument vector into a validated [`Command`].
pub fn parse<I>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = String>,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Command::Informational(e.to_string()));
        }
        Err(e) => return Err(usage(e.to_string())),
    };

    if let Some(path) = args.batch {
        if args.alpha.is_some()
            || args.beta.is_some()
            || args.b.is_some()
            || args.c.is_some()
            || args.seq.is_some()
            || args.n.is_some()
            || args.m.is_some()
        {
            return Err(usage("--batch takes its requests from the file and cannot be combined with --alpha/--beta/--b/--c/--seq"));
        }
        if let Some(tol) = args.tol {
            check_tolerance(tol)?;
        }
        return Ok(Command::Batch {
            path,
            want_verify: args.verify,
            format: args.format,
            tol: args.tol,
        });
    }

    let alpha = args.alpha.ok_or_else(|| usage("--alpha is required"))?;
    let beta = args.beta.ok_or_else(|| usage("--beta is required"))?;
    check_division_parameters(alpha, beta)?;
    if let Some(tol) = args.tol {
        check_tolerance(tol)?;
    }

    let (b, c) = match (&args.seq, &args.b, &args.c) {
        (Some(seq), None, None) => {
            let kind = SequenceKind::parse(seq).ok_or_else(|| {
                usage(format!(
                    "unknown sequence `{seq}` (use fib, pell, or lucas)"
                ))
            })?;
            let n = args.n.ok_or_else(|| usage("--seq requires --n"))?;
            let m = args.m.ok_or_else(|| usage("--seq requires --m"))?;
            let b = sequences::quaternion_term(kind, n).map_err(|e| usage(e.to_string()))?;
            let c = sequences::quaternion_term(kind, m).map_err(|e| usage(e.to_string()))?;
            (b, c)
        }
        (Some(_), _, _) => return Err(usage("--seq cannot be combined with --b/--c")),
        (None, Some(b), Some(c)) => (parse_quaternion(b)?, parse_quaternion(c)?),
        (None, _, _) => {
            return Err(usage(
                "provide either --b and --c, or --seq with --n and --m",
            ))
        }
    };

    Ok(Command::Single(Box::new(Request {
        alpha,
        beta,
        b,
        c,
        want_verify: args.verify,
        format: args.format,
        tol: args.tol,
    })))
}

fn check_tolerance(tol: f64) -> Result<(), UsageError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage(format!("--tol must be a positive real, got {tol}")));
    }
    Ok(())
}

/// Result of the `--verify` pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub seed: u64,
    pub starts: usize,
    pub residual_ok: bool,
    pub oracle_roots: Vec<Quaternion>,
    pub unmatched: usize,
    /// True for the infinite-family case, where oracle roots are valid
    /// points of the quadric rather than repeats of the representative.
    pub matching_skipped: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.residual_ok && self.unmatched == 0
    }
}

fn verify_report(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
    report: &SolveReport,
) -> Verification {
    let mut residual_ok = true;
    for root in report.set.roots() {
        let check = verify::residual(ctx, b, c, root.x);
        if check.residual_norm > VERIFY_RESIDUAL_TOL * check.scale {
            residual_ok = false;
        }
    }
    let (oracle_roots, unmatched, matching_skipped) = match &report.set {
        SolutionSet::Quadric(_) => (Vec::new(), 0, true),
        SolutionSet::Finite(roots) => {
            let found = verify::oracle_solve(ctx, b, c, ORACLE_STARTS, ORACLE_TOL);
            let unmatched = found
                .iter()
                .filter(|o| {
                    !roots.iter().any(|r| {
                        (r.x - **o).sup_norm()
                            <= ORACLE_MATCH_TOL * f64::max(1.0, r.x.sup_norm().max(o.sup_norm()))
                    })
                })
                .count();
            (found, unmatched, false)
        }
    };
    Verification {
        seed: verify::ORACLE_SEED,
        starts: ORACLE_STARTS,
        residual_ok,
        oracle_roots,
        unmatched,
        matching_skipped,
    }
}

fn no_negative_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn fmt6(v: f64) -> String {
    format!("{:.6}", no_negative_zero(v))
}

fn fmt6_signed(v: f64) -> String {
    format!("{:+.6}", no_negative_zero(v))
}

fn solution_line(index: usize, x: Quaternion) -> String {
    format!(
        "x_{index}={} {} e_1{} e_2{} e_3",
        fmt6(x.q1),
        fmt6_signed(x.q2),
        fmt6_signed(x.q3),
        fmt6_signed(x.q4)
    )
}

/// The six-decimal text listing for one solved equation.
pub fn render_text(report: &SolveReport, verification: Option<&Verification>) -> String {
    let mut out = String::new();
    let inv = report.reduced.invariants;
    out.push_str(&format!("C={}\n", fmt6(inv.c)));
    out.push_str(&format!("A={}\n", fmt6(inv.a)));
    out.push_str(&format!("B={}\n", fmt6(inv.b)));

    if !report.pairs.is_empty() {
        if report.pairs[0].w == 0.0 {
            for (i, pair) in report.pairs.iter().enumerate() {
                out.push_str(&format!("Y_{}={}\n", i + 1, fmt6(pair.y)));
            }
        } else {
            out.push_str(&format!("W=±{}\n", fmt6(report.pairs[0].w.abs())));
            if report.pairs.len() == 2 && report.pairs[0].y == report.pairs[1].y {
                out.push_str(&format!("Y={}\n", fmt6(report.pairs[0].y)));
            }
        }
    }

    if let SolutionSet::Quadric(family) = &report.set {
        out.push_str(&format!(
            "infinite family: -alpha*e^2 - beta*f^2 + alpha*beta*g^2 = {}\n",
            fmt6(family.rhs)
        ));
    }
    for (i, root) in report.set.roots().iter().enumerate() {
        out.push_str(&solution_line(i + 1, root.x));
        out.push('\n');
    }

    if let Some(v) = verification {
        for (i, root) in report.set.roots().iter().enumerate() {
            out.push_str(&format!(
                "residual_norm x_{}={:.3e}\n",
                i + 1,
                root.residual_norm
            ));
        }
        if v.matching_skipped {
            out.push_str(&format!(
                "oracle: matching skipped for the infinite family (residuals {})\n",
                if v.residual_ok { "ok" } else { "FAILED" }
            ));
        } else {
            out.push_str(&format!(
                "oracle: {} root(s) from {} starts (seed {:#x}), {}; residuals {}\n",
                v.oracle_roots.len(),
                v.starts,
                v.seed,
                if v.unmatched == 0 {
                    "all matched".to_string()
                } else {
                    format!("{} UNMATCHED", v.unmatched)
                },
                if v.residual_ok { "ok" } else { "FAILED" }
            ));
        }
    }
    out
}

/// The machine-readable form of one solved equation.
pub fn render_json(
    request: &Request,
    report: &SolveReport,
    verification: Option<&Verification>,
) -> serde_json::Value {
    let inv = report.reduced.invariants;
    let roots = report.set.roots();
    let mut value = json!({
        "alpha": request.alpha,
        "beta": request.beta,
        "b": request.b.coords(),
        "c": request.c.coords(),
        "case": report.case.name(),
        "A": inv.a,
        "B": inv.b,
        "C": inv.c,
        "solutions": roots.iter().map(|r| r.x.coords()).collect::<Vec<_>>(),
        "residual_norms": roots.iter().map(|r| r.residual_norm).collect::<Vec<_>>(),
    });
    let obj = value.as_object_mut().expect("top-level object");
    if !report.pairs.is_empty() {
        obj.insert(
            "W".into(),
            json!(report.pairs.iter().map(|p| p.w).collect::<Vec<_>>()),
        );
        obj.insert(
            "Y".into(),
            json!(report.pairs.iter().map(|p| p.y).collect::<Vec<_>>()),
        );
    }
    if let SolutionSet::Quadric(family) = &report.set {
        obj.insert(
            "family".into(),
            json!({
                "constraint": "-alpha*e^2 - beta*f^2 + alpha*beta*g^2",
                "rhs": family.rhs,
            }),
        );
    }
    if let Some(v) = verification {
        obj.insert(
            "verify".into(),
            json!({
                "seed": v.seed,
                "starts": v.starts,
                "residual_ok": v.residual_ok,
                "oracle_roots": v.oracle_roots.iter().map(|q| q.coords()).collect::<Vec<_>>(),
                "unmatched": v.unmatched,
                "matching_skipped": v.matching_skipped,
                "passed": v.passed(),
            }),
        );
    }
    value
}

fn solver_config(tol: Option<f64>) -> SolverConfig {
    let mut config = SolverConfig::default();
    if let Some(tol) = tol {
        config.newton_tol = tol;
    }
    config
}

fn solve_single(
    request: &Request,
) -> Result<(SolveReport, Option<Verification>), solver::SolverError> {
    let ctx = AlgebraContext::new(request.alpha, request.beta)
        .expect("parameters validated at parse time");
    let report = solver::solve_report(ctx, request.b, request.c, &solver_config(request.tol))?;
    let verification = request
        .want_verify
        .then(|| verify_report(ctx, request.b, request.c, &report));
    Ok((report, verification))
}

fn parse_batch_line(
    line: &str,
    number: usize,
) -> Result<Option<(f64, f64, Quaternion, Quaternion)>, UsageError> {
    let content = line.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(usage(format!(
            "batch line {number}: expected `alpha beta b1,b2,b3,b4 c1,c2,c3,c4`, got `{content}`"
        )));
    }
    let alpha: f64 = fields[0].parse().map_err(|_| {
        usage(format!(
            "batch line {number}: malformed alpha `{}`",
            fields[0]
        ))
    })?;
    let beta: f64 = fields[1].parse().map_err(|_| {
        usage(format!(
            "batch line {number}: malformed beta `{}`",
            fields[1]
        ))
    })?;
    check_division_parameters(alpha, beta)
        .map_err(|e| usage(format!("batch line {number}: {e}")))?;
    let b = parse_quaternion(fields[2]).map_err(|e| usage(format!("batch line {number}: {e}")))?;
    let c = parse_quaternion(fields[3]).map_err(|e| usage(format!("batch line {number}: {e}")))?;
    Ok(Some((alpha, beta, b, c)))
}

/// Parses, solves, prints, and maps the outcome to an exit code:
/// 0 success, 2 usage error, 3 solver or verification failure.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    match execute(argv) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            3
        }
        Err(Failure::Verification(output)) => {
            print!("{output}");
            eprintln!("error: verification failed");
            3
        }
    }
}

enum Failure {
    Usage(UsageError),
    Solver(solver::SolverError),
    /// Output is still printed so the failing values are visible.
    Verification(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<solver::SolverError> for Failure {
    fn from(e: solver::SolverError) -> Self {
        Failure::Solver(e)
    }
}

fn execute<I>(argv: I) -> Result<String, Failure>
where
    I: IntoIterator<Item = String>,
{
    match parse(argv)? {
        Command::Informational(text) => Ok(format!("{text}\n")),
        Command::Single(request) => {
            let (report, verification) = solve_single(&request)?;
            let output = match request.format {
                OutputFormat::Text => render_text(&report, verification.as_ref()),
                OutputFormat::Json => {
                    let value = render_json(&request, &report, verification.as_ref());
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&value).expect("serializable")
                    )
                }
            };
            match verification {
                Some(v) if !v.passed() => Err(Failure::Verification(output)),
                _ => Ok(output),
            }
        }
        Command::Batch {
            path,
            want_verify,
            format,
            tol,
        } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let mut requests = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if let Some((alpha, beta, b, c)) = parse_batch_line(line, i + 1)? {
                    requests.push(Request {
                        alpha,
                        beta,
                        b,
                        c,
                        want_verify,
                        format,
                        tol,
                    });
                }
            }
            let mut output = String::new();
            let mut json_items = Vec::new();
            let mut all_verified = true;
            for (i, request) in requests.iter().enumerate() {
                let (report, verification) = solve_single(request)?;
                if let Some(v) = &verification {
                    all_verified &= v.passed();
                }
                match format {
                    OutputFormat::Text => {
                        output.push_str(&format!(
                            "# request {}: alpha={} beta={} b={:?} c={:?}\n",
                            i + 1,
                            request.alpha,
                            request.beta,
                            request.b.coords(),
                            request.c.coords()
                        ));
                        output.push_str(&render_text(&report, verification.as_ref()));
                        output.push('\n');
                    }
                    OutputFormat::Json => {
                        json_items.push(render_json(request, &report, verification.as_ref()));
                    }
                }
            }
            if format == OutputFormat::Json {
                output = format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::Value::Array(json_items))
                        .expect("serializable")
                );
            }
            if all_verified {
                Ok(output)
            } else {
                Err(Failure::Verification(output))
            }
        }
    }
}
