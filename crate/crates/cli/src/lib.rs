//! Batch front end: configure an algebra, run claim checks in a bounded
//! worker pool and emit text or JSON reports.
//!
//! Exit codes: 0 when every report is CONFIRMED, 2 when any is REFUTED,
//! 3 when any is INCONCLUSIVE (and none REFUTED), 1 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use inq_core::verify::{self, applicable_claims, compute_delta, Claim, Report, Status, VerifyConfig};
use inq_core::{Algebra, Tensor, TolerancePolicy};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

pub const EXIT_CONFIRMED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "INQ_VERIFY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "inq-verify", version, about = "Check span and ideal identities of p ⊗ (1 − p) in multi-matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more claim checks.
    Verify(RunArgs),
    /// Highest weights and summand dimensions inside g ⊗ g for M_n.
    Decompose(RunArgs),
    /// Compute the equality projection δ_A and check it.
    Delta(RunArgs),
    /// Print the registered claim ids.
    ListClaims,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Claim id, or `all` for every claim applicable to the dims. Repeatable.
    #[arg(long = "claim")]
    claims: Vec<String>,
    /// Factor sizes, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Trace weights, e.g. `0.5,0.5`; renormalized. Defaults to uniform.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol_rel: Option<f64>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    tol_angle: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with the same keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// 0-based factor pair `i,j` for the a1j claim.
    #[arg(long, value_delimiter = ',')]
    a1j: Option<Vec<usize>>,
    /// Record wall-clock durations (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    #[default]
    None,
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TolFile {
    rel: Option<f64>,
    abs: Option<f64>,
    angle: Option<f64>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default, alias = "claim")]
    claims: OneOrMany,
    dims: Option<Vec<usize>>,
    weights: Option<Vec<f64>>,
    seed: Option<u64>,
    #[serde(default)]
    tol: TolFile,
    format: Option<Format>,
    out: Option<PathBuf>,
    a1j: Option<(usize, usize)>,
    timing: Option<bool>,
}

/// Fully merged settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub claims: Vec<Claim>,
    pub verify: VerifyConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn registry_listing() -> String {
    Claim::ALL.iter().map(|c| format!("  {:<15} {}", c.id(), c.summary())).collect::<Vec<_>>().join("\n")
}

fn resolve_claims(ids: &[String], dims: &[usize]) -> Result<Vec<Claim>, Usage> {
    let mut out = Vec::new();
    for id in ids {
        if id == "all" {
            out.extend(applicable_claims(dims));
            continue;
        }
        let claim = Claim::from_id(id)
            .ok_or_else(|| Usage(format!("unknown claim id `{id}`; registered claims:\n{}", registry_listing())))?;
        claim.check_applicable(dims)?;
        out.push(claim);
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Usage(format!("no claim applies to dims {dims:?}")));
    }
    Ok(out)
}

fn merge(args: RunArgs, default_claims: &[&str]) -> Result<RunConfig, Usage> {
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<FileConfig>(&text).map_err(|e| Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let dims = args.dims.or(file.dims).ok_or_else(|| Usage("--dims is required".into()))?;
    let weights = args.weights.or(file.weights);
    let defaults = TolerancePolicy::default();
    let tol = TolerancePolicy::new(
        args.tol_rel.or(file.tol.rel).unwrap_or(defaults.rel),
        args.tol_abs.or(file.tol.abs).unwrap_or(defaults.abs),
        args.tol_angle.or(file.tol.angle).unwrap_or(defaults.angle),
    )?;
    Algebra::new(&dims, weights.as_deref())?;
    let a1j = match args.a1j {
        Some(v) if v.len() == 2 => Some((v[0], v[1])),
        Some(v) => return Err(Usage(format!("--a1j takes two indices, got {}", v.len()))),
        None => file.a1j,
    };
    let ids: Vec<String> = if !args.claims.is_empty() {
        args.claims
    } else {
        match file.claims {
            OneOrMany::One(s) => vec![s],
            OneOrMany::Many(v) => v,
            OneOrMany::None => default_claims.iter().map(|s| s.to_string()).collect(),
        }
    };
    let claims = resolve_claims(&ids, &dims)?;
    let verify = VerifyConfig { dims, weights, seed: args.seed.or(file.seed).unwrap_or(42), tol, a1j };
    Ok(RunConfig {
        claims,
        verify,
        format: args.format.or(file.format).unwrap_or_default(),
        out: args.out.or(file.out),
        timing: args.timing || file.timing.unwrap_or(false),
    })
}

fn pool_size() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Runs `claims` in a worker pool; the result order follows `claims`.
pub fn run_claims(claims: &[Claim], cfg: &VerifyConfig) -> inq_core::Result<Vec<Report>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(pool_size()).build().expect("thread pool starts");
    pool.install(|| claims.par_iter().map(|&c| verify::run(c, cfg)).collect())
}

fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Refuted) {
        EXIT_REFUTED
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_CONFIRMED
    }
}

fn finalize(mut reports: Vec<Report>, timing: bool) -> Vec<Report> {
    if !timing {
        for r in &mut reports {
            r.duration_ms = None;
        }
    }
    reports
}

fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let v = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
            serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
        }
        Format::Text => reports.iter().map(Report::render_text).collect::<Vec<_>>().join("\n"),
    }
}

fn delta_entries(alg: &Algebra, d: &Tensor) -> Vec<(usize, usize, [usize; 4], f64, f64)> {
    let dims = alg.dims();
    let mut out = Vec::new();
    for i in 0..dims.len() {
        for j in 0..dims.len() {
            let (ni, nj) = (dims[i], dims[j]);
            for a in 0..ni {
                for b in 0..ni {
                    for c in 0..nj {
                        for e in 0..nj {
                            let z = d.coeffs()[alg.index(i, j, a, b, c, e)];
                            if z.norm() > 1e-12 {
                                out.push((i, j, [a, b, c, e], z.re, z.im));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Usage> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Usage::from),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Usage> {
    match cli.command {
        Command::ListClaims => {
            writeln!(stdout, "{}", registry_listing())?;
            Ok(EXIT_CONFIRMED)
        }
        Command::Verify(args) => {
            let cfg = merge(args, &["all"])?;
            let reports = finalize(run_claims(&cfg.claims, &cfg.verify)?, cfg.timing);
            emit(&render(&reports, cfg.format), cfg.out.as_deref(), stdout)?;
            Ok(exit_code(&reports))
        }
        Command::Decompose(args) => {
            let cfg = merge(args, &["decomposition"])?;
            if cfg.claims != [Claim::Decomposition] {
                return Err(Usage("decompose runs only the decomposition claim".into()));
            }
            let reports = finalize(run_claims(&cfg.claims, &cfg.verify)?, cfg.timing);
            emit(&render(&reports, cfg.format), cfg.out.as_deref(), stdout)?;
            Ok(exit_code(&reports))
        }
        Command::Delta(args) => {
            let cfg = merge(args, &["delta"])?;
            if cfg.claims != [Claim::Delta] {
                return Err(Usage("delta runs only the delta claim".into()));
            }
            let alg = cfg.verify.algebra()?;
            let (d, report) = compute_delta(&cfg.verify)?;
            let reports = finalize(vec![report], cfg.timing);
            let entries = delta_entries(&alg, &d);
            let text = match cfg.format {
                Format::Json => {
                    let coeffs: Vec<Value> = entries
                        .iter()
                        .map(|(i, j, idx, re, im)| json!({"block": [i, j], "index": idx, "re": re, "im": im}))
                        .collect();
                    serde_json::to_string_pretty(&json!({"report": reports[0], "delta": coeffs}))? + "\n"
                }
                Format::Text => {
                    let mut s = reports[0].render_text();
                    s.push_str("delta coefficients (block; a,b,c,d: value):\n");
                    for (i, j, [a, b, c, e], re, im) in &entries {
                        s.push_str(&format!("  ({i},{j}); {a},{b},{c},{e}: {re}{im:+}i\n"));
                    }
                    s
                }
            };
            emit(&text, cfg.out.as_deref(), stdout)?;
            Ok(exit_code(&reports))
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_CONFIRMED,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_CONFIRMED { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Runs with the process's standard streams. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut out, &mut err)
}
