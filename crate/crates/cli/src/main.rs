//! `equidist` command-line front end.
//!
//! Exit codes: 0 success / claim holds, 1 claim violated or verification
//! failed, 2 usage or input error, 3 resource or budget exhaustion.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use equidist::bounds::delsarte_report;
use equidist::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if io::stdout().lock().write_fmt(args).is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

const EXIT_OK: u8 = 0;
const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "equidist", version, about = "Verify, bound, construct and search single-distance codes")]
struct Cli {
    /// Report format. CSV is only available for `sweep`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every pair of words in a family is at the same distance.
    Verify {
        /// Family file, or `-` for standard input.
        input: PathBuf,
        /// Also verify a random isometric image drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the size bound for single-distance codes.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, required_unless_present = "s")]
        lambda: Option<u64>,
        /// Report the Delsarte bound for `s` distances instead.
        #[arg(long, conflicts_with = "lambda")]
        s: Option<u64>,
    },
    /// Build the Gram-matrix certificate for a binary equidistant family.
    Certify {
        /// Family file, or `-` for standard input.
        input: PathBuf,
    },
    /// Construct combinatorial objects.
    Construct {
        #[command(subcommand)]
        what: ConstructKind,
    },
    /// Exhaustive maximum equidistant code search.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u16,
        #[arg(long)]
        lambda: usize,
        #[command(flatten)]
        limits: Limits,
        /// Search the full word space without fixing the first two members.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Exact maxima for every 1 <= λ <= n <= max-n, compared with the bounds.
    Sweep {
        #[arg(long)]
        q: u16,
        #[arg(long = "max-n")]
        max_n: usize,
        /// Directory that stores finished rows; reruns skip them.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// A Hadamard matrix of the given order.
    Hadamard {
        #[arg(long)]
        order: usize,
        /// Emit the 0/1 rows as a family instead of the ±1 matrix.
        #[arg(long)]
        as_family: bool,
    },
}

#[derive(clap::Args, Debug)]
struct Limits {
    /// Maximum number of search nodes per search.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit per search, in seconds.
    #[arg(long = "time-limit")]
    time_limit: Option<f64>,
    #[arg(long, env = "EQUIDIST_THREADS", default_value_t = 1)]
    threads: usize,
    /// Largest q^n to enumerate.
    #[arg(long = "max-vertices", default_value_t = search::DEFAULT_MAX_VERTICES)]
    max_vertices: u64,
}

impl Limits {
    fn time_budget(&self) -> Result<Option<Duration>, Failure> {
        self.time_limit
            .map(|s| {
                Duration::try_from_secs_f64(s)
                    .map_err(|_| Failure::usage(format!("invalid time limit {s}")))
            })
            .transpose()
    }
}

/// An error to print on standard error, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::UnsupportedAlphabet { .. }
            | Error::OutOfRegime(_) => EXIT_USAGE,
            Error::Underdetermined { .. } | Error::NotEquidistant(_) | Error::Invariant(_) => {
                EXIT_VIOLATED
            }
            Error::Resource(_) => EXIT_RESOURCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_family(path: &PathBuf) -> Result<Family, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(Family::parse(&text)?)
}

fn print_json(value: &impl serde::Serialize) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("report types serialize")
    );
}

fn no_csv(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::usage(format!(
            "--format csv is only supported by `sweep`, not `{command}`"
        )));
    }
    Ok(())
}

fn verify(format: Format, input: &PathBuf, seed: Option<u64>) -> Result<u8, Failure> {
    no_csv(format, "verify")?;
    let family = read_family(input)?;
    let outcome = check_equidistant(&family);
    let image_check = match (&outcome, seed) {
        (Ok(cert), Some(seed)) => {
            let iso = Isometry::random(family.n(), family.q(), &mut ChaCha8Rng::seed_from_u64(seed));
            let image = apply_isometry(&iso, &family)?;
            let image_lambda = check_equidistant(&image).ok().map(|c| c.lambda);
            Some((seed, image_lambda, image_lambda == Some(cert.lambda)))
        }
        _ => None,
    };
    let preserved = image_check.is_none_or(|(_, _, ok)| ok);

    match format {
        Format::Json => {
            let mut report = match &outcome {
                Ok(cert) => json!({
                    "equidistant": true,
                    "n": family.n(),
                    "q": family.q(),
                    "m": family.len(),
                    "certificate": cert,
                }),
                Err(Error::NotEquidistant(fail)) => json!({
                    "equidistant": false,
                    "n": family.n(),
                    "q": family.q(),
                    "m": family.len(),
                    "failure": fail,
                }),
                Err(e) => json!({
                    "equidistant": false,
                    "n": family.n(),
                    "q": family.q(),
                    "m": family.len(),
                    "error": e.to_string(),
                }),
            };
            if let Some((seed, image_lambda, ok)) = image_check {
                report["isometry_check"] = json!({
                    "seed": seed,
                    "image_lambda": image_lambda,
                    "preserved": ok,
                });
            }
            print_json(&report);
        }
        _ => {
            match &outcome {
                Ok(cert) => outln!(
                    "equidistant: lambda = {}, m = {}, n = {}, q = {}, pairs = {}",
                    cert.lambda,
                    family.len(),
                    family.n(),
                    family.q(),
                    cert.pair_count
                ),
                Err(Error::NotEquidistant(fail)) => outln!("not equidistant: {fail}"),
                Err(e) => outln!("not verified: {e}"),
            }
            if let Some((seed, image_lambda, ok)) = image_check {
                let shown = image_lambda.map_or("none".to_string(), |l| l.to_string());
                outln!(
                    "isometry check (seed {seed}): image lambda = {shown}, {}",
                    if ok { "preserved" } else { "NOT preserved" }
                );
            }
        }
    }
    Ok(if outcome.is_ok() && preserved {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    })
}

fn bound(format: Format, n: u64, q: u64, lambda: Option<u64>, s: Option<u64>) -> Result<u8, Failure> {
    no_csv(format, "bound")?;
    let report = match (lambda, s) {
        (_, Some(s)) => delsarte_report(n, q, s)?,
        (Some(lambda), None) => conjecture_bound(n, q, lambda)?,
        (None, None) => return Err(Failure::usage("one of --lambda or --s is required")),
    };
    match format {
        Format::Json => print_json(&report),
        _ => {
            outln!("bound: {}", report.bound);
            outln!("source: {}", report.source);
            outln!("exceptional: {}", report.exceptional);
            if let Some(v) = report.excluded_value {
                outln!("excluded_value: {v}");
            }
            if report.conjectural {
                outln!("conjectural: true (unproven for q > 2)");
            }
        }
    }
    Ok(EXIT_OK)
}

fn certify(format: Format, input: &PathBuf) -> Result<u8, Failure> {
    no_csv(format, "certify")?;
    let family = read_family(input)?;
    let cert = match gram_certificate(&family) {
        Ok(c) => c,
        Err(Error::NotEquidistant(fail)) => {
            match format {
                Format::Json => print_json(&json!({ "certified": false, "failure": fail })),
                _ => outln!("certificate refused: {fail}"),
            }
            return Ok(EXIT_VIOLATED);
        }
        Err(e) => return Err(e.into()),
    };
    match format {
        Format::Json => print_json(&cert),
        _ => {
            outln!("m: {}", cert.m);
            outln!("n: {}", cert.n);
            outln!("lambda: {}", cert.lambda);
            outln!("gram_matches_structure: {}", cert.gram_matches_structure);
            outln!("det_value: {}", cert.det_value);
            outln!("rank_value: {}", cert.rank_value);
            outln!("pd: {}", cert.pd);
            let conclusion = match cert.conclusion {
                Conclusion::BoundNProven => "bound_n_proven",
                Conclusion::ExceptionalInconclusive => "exceptional_inconclusive",
            };
            outln!("conclusion: {conclusion}");
        }
    }
    Ok(if cert.gram_matches_structure {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    })
}

fn construct(format: Format, what: &ConstructKind) -> Result<u8, Failure> {
    no_csv(format, "construct")?;
    let ConstructKind::Hadamard { order, as_family } = what;
    let h = hadamard_of_order(*order)?;
    match (format, as_family) {
        (Format::Json, true) => print_json(&hadamard_to_family(&h)?),
        (Format::Json, false) => {
            let rows: Vec<&[i8]> = h.rows().collect();
            print_json(&json!({ "order": h.order(), "rows": rows }));
        }
        (_, true) => out!("{}", hadamard_to_family(&h)?.to_text()),
        (_, false) => out!("{}", h.to_text()),
    }
    Ok(EXIT_OK)
}

fn search_cmd(
    format: Format,
    n: usize,
    q: u16,
    lambda: usize,
    limits: &Limits,
    no_symmetry: bool,
) -> Result<u8, Failure> {
    no_csv(format, "search")?;
    let problem = SearchProblem::new(n, q, lambda)?
        .with_node_budget(limits.budget)
        .with_time_budget(limits.time_budget()?)
        .with_threads(limits.threads)
        .with_symmetry_reduction(!no_symmetry)
        .with_max_vertices(limits.max_vertices);
    let result = max_equidistant(&problem)?;
    match format {
        Format::Json => print_json(&result),
        _ => {
            let b = &result.bound_comparison;
            outln!("# n = {n}, q = {q}, lambda = {lambda}");
            outln!("# max_size = {}", result.max_size);
            outln!("# complete = {}", result.complete);
            outln!("# nodes_explored = {}", result.nodes_explored);
            outln!(
                "# bound = {} (source {}, exceptional {}{})",
                b.bound,
                b.source,
                b.exceptional,
                if b.conjectural { ", conjectural" } else { "" }
            );
            if result.complete && !b.exceptional && num_bigint_gt(result.max_size, &b.bound) {
                outln!("# COUNTEREXAMPLE: max_size exceeds the bound off the excluded distance");
            }
            out!("{}", result.witness.to_text());
        }
    }
    if !result.complete {
        eprintln!("search budget exhausted; result is a lower bound only");
        return Ok(EXIT_RESOURCE);
    }
    Ok(EXIT_OK)
}

fn num_bigint_gt(size: usize, bound: &num_bigint::BigUint) -> bool {
    num_bigint::BigUint::from(size) > *bound
}

fn sweep_cmd(
    format: Format,
    q: u16,
    max_n: usize,
    resume: Option<PathBuf>,
    limits: &Limits,
) -> Result<u8, Failure> {
    let opts = SweepOptions {
        threads: limits.threads,
        node_budget: limits.budget,
        time_budget: limits.time_budget()?,
        max_vertices: limits.max_vertices,
        resume_dir: resume,
    };
    let report = if q == 2 {
        sweep_theorem(max_n, &opts)?
    } else {
        sweep_conjecture(q, max_n, &opts)?
    };
    match format {
        Format::Json => print_json(&report),
        Format::Csv => out!("{}", report.to_csv()),
        Format::Text => {
            outln!(
                "{:>3} {:>3} {:>6} {:>8} {:>6} {:>11} {:>8} {:>10}",
                "n", "q", "lambda", "max_size", "bound", "exceptional", "complete", "nodes"
            );
            for r in &report.rows {
                outln!(
                    "{:>3} {:>3} {:>6} {:>8} {:>6} {:>11} {:>8} {:>10}",
                    r.n, r.q, r.lambda, r.max_size, r.bound, r.exceptional, r.complete, r.nodes
                );
            }
            outln!("counterexample_flag: {}", report.counterexample_flag);
        }
    }
    for r in report.counterexamples() {
        eprintln!(
            "COUNTEREXAMPLE: q={} n={} lambda={} has {} words, above the bound {}",
            r.q, r.n, r.lambda, r.max_size, r.bound
        );
    }
    for r in report.fallback_violations() {
        eprintln!(
            "INCONSISTENT: q={} n={} lambda={} has {} words, above the proven fallback {}",
            r.q, r.n, r.lambda, r.max_size, r.bound
        );
    }
    Ok(if report.counterexample_flag || report.fallback_violations().next().is_some() {
        EXIT_VIOLATED
    } else if !report.all_complete() {
        eprintln!("some rows are incomplete (budget or enumeration limit)");
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Verify { input, seed } => verify(format, &input, seed),
        Command::Bound { n, q, lambda, s } => bound(format, n, q, lambda, s),
        Command::Certify { input } => certify(format, &input),
        Command::Construct { what } => construct(format, &what),
        Command::Search {
            n,
            q,
            lambda,
            limits,
            no_symmetry,
        } => search_cmd(format, n, q, lambda, &limits, no_symmetry),
        Command::Sweep {
            q,
            max_n,
            resume,
            limits,
        } => sweep_cmd(format, q, max_n, resume, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
