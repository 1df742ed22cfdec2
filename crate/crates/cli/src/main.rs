mod bracket;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use bohemian_spread::bohemian::{parse_rational, AValue, SymBohemian};
use bohemian_spread::enumerate::enumeration_counts;
use bohemian_spread::sampler::{run_distribution, SampleConfig, SampleError};
use bohemian_spread::verify::{
    digest_uni, rat_string, rho_key, rho_of, verify_symbolic_with, verify_zero_with,
    LargestRoot, Progress, SymbolicConfig, Timing, Verdict, VerificationReport, VerifyError,
    ZeroConfig,
};

/// Exit codes in the BSD sysexits style.
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "bohemian-spread", version, about = "Exact spread maxima of symmetric {1, a} matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustive check at a = 0.
    VerifyZero(VerifyZeroArgs),
    /// Exhaustive check with a symbolic on [-1, 1].
    VerifySymbolic(VerifySymbolicArgs),
    /// Exact squared spread of one matrix file.
    Spread(SpreadArgs),
    /// Monte-Carlo distribution of the normalised spread.
    Sample(SampleArgs),
    /// Sizes of the raw and reduced search spaces.
    EnumerateStats(StatsArgs),
}

#[derive(Args)]
struct Workers {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "BOHEMIAN_SPREAD_WORKERS")]
    workers: Option<usize>,
}

#[derive(Args)]
struct VerifyZeroArgs {
    #[arg(long)]
    m: usize,
    /// Isolating intervals are narrowed to width 2^-EXP.
    #[arg(long, default_value_t = 20)]
    tolerance_exp: u32,
    /// Report candidates whose spread² exceeds FACTOR² times the conjecture.
    #[arg(long, default_value = "999/1000")]
    factor: String,
    #[command(flatten)]
    workers: Workers,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Disable the Mirsky pre-filter.
    #[arg(long)]
    no_mirsky: bool,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Add wall-clock data to the report (breaks byte-identity).
    #[arg(long)]
    timing: bool,
    /// Chunk progress on stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Args)]
struct VerifySymbolicArgs {
    #[arg(long)]
    m: usize,
    #[command(flatten)]
    workers: Workers,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    progress: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Args)]
struct SpreadArgs {
    /// Matrix in the `m a=<value>` text format.
    file: PathBuf,
    /// Value for a, overriding the file header; required when it says `a=sym`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, default_value_t = 20)]
    tolerance_exp: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
}

#[derive(Clone, Copy, ValueEnum)]
enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 13)]
    m: usize,
    #[arg(long, default_value_t = 200_000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    bins: usize,
    #[command(flatten)]
    workers: Workers,
    /// Histogram CSV path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Summary JSON path.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// What goes to stdout when no file is named.
    #[arg(long, value_enum, default_value = "json")]
    format: CsvOrJson,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(s) | CliError::Data(s) | CliError::Internal(s) => s,
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::OutOfRange { .. } => CliError::Usage(e.to_string()),
            VerifyError::Checkpoint { .. } => CliError::Data(e.to_string()),
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::Config(_) => CliError::Usage(e.to_string()),
            SampleError::NoConvergence { .. } => CliError::Internal(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Internal(format!("{}: {e}", path.display()))
}

fn check_workers(w: &Workers) -> Result<Option<usize>, CliError> {
    match w.workers {
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        w => Ok(w),
    }
}

fn tolerance(exp: u32) -> Result<BigRational, CliError> {
    if !(1..=256).contains(&exp) {
        return Err(CliError::Usage(format!("--tolerance-exp {exp} outside 1..=256")));
    }
    Ok(BigRational::new(BigInt::one(), BigInt::one() << exp))
}

fn progress_bar(on: bool) -> Option<Progress> {
    on.then(|| -> Progress {
        Arc::new(|done, total| {
            eprintln!("{done}/{total} units");
        })
    })
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}

fn summary_line(r: &VerificationReport) -> String {
    let max = r.max_spread_sq.as_ref().map(rat_string).unwrap_or_else(|| "-".into());
    format!(
        "m={} verdict={} max_spread_sq={} examined={} unique={}",
        r.m,
        r.verdict.as_str(),
        max,
        r.candidates_examined,
        r.unique_resultants.nontrivial
    )
}

fn finish_report(
    report: &VerificationReport,
    out: Option<&Path>,
    started: Option<(Instant, Option<usize>)>,
) -> Result<u8, CliError> {
    let timing = started.map(|(t, w)| Timing {
        wall_seconds: t.elapsed().as_secs_f64(),
        workers: w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    });
    write_or_print(out, &report.to_json(timing.as_ref()))?;
    if out.is_some() {
        println!("{}", summary_line(report));
    }
    Ok(match report.verdict {
        Verdict::ConjectureHolds => 0,
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Inconclusive => EXIT_INTERNAL,
    })
}

fn verify_zero(args: VerifyZeroArgs) -> Result<u8, CliError> {
    let factor = parse_rational(&args.factor)
        .filter(|f| f > &BigRational::zero() && f <= &BigRational::one())
        .ok_or_else(|| CliError::Usage(format!("--factor {:?} is not a rational in (0, 1]", args.factor)))?;
    let mut cfg = ZeroConfig::new(args.m);
    cfg.tolerance = tolerance(args.tolerance_exp)?;
    cfg.report_factor = factor;
    cfg.workers = check_workers(&args.workers)?;
    cfg.mirsky_pruning = !args.no_mirsky;
    cfg.checkpoint = args.checkpoint;
    cfg.progress = progress_bar(args.progress);
    let t = Instant::now();
    let report = verify_zero_with(&cfg)?;
    finish_report(&report, args.out.as_deref(), args.timing.then_some((t, cfg.workers)))
}

fn verify_symbolic(args: VerifySymbolicArgs) -> Result<u8, CliError> {
    let mut cfg = SymbolicConfig::new(args.m);
    cfg.workers = check_workers(&args.workers)?;
    cfg.checkpoint = args.checkpoint;
    cfg.progress = progress_bar(args.progress);
    let t = Instant::now();
    let report = verify_symbolic_with(&cfg)?;
    finish_report(&report, args.out.as_deref(), args.timing.then_some((t, cfg.workers)))
}

#[derive(Serialize)]
struct SpreadJson {
    m: usize,
    a: String,
    spread_sq_lo: String,
    spread_sq_hi: String,
    spread_lo: String,
    spread_hi: String,
    resultant_hash: String,
}

fn spread(args: SpreadArgs) -> Result<u8, CliError> {
    let width = tolerance(args.tolerance_exp)?;
    let text = fs::read_to_string(&args.file).map_err(|e| io_err(&args.file, e))?;
    let mut s = SymBohemian::parse_text(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.file.display())))?;
    if let Some(a) = &args.a {
        let a = parse_rational(a).ok_or_else(|| CliError::Usage(format!("--a {a:?} is not a rational")))?;
        s = s.with_a(AValue::Fixed(a));
    }
    let Some(a) = s.a().fixed().cloned() else {
        return Err(CliError::Usage("matrix has a=sym; pass --a".into()));
    };
    let rho = rho_of(&s);
    let iv = LargestRoot::of(&rho, &width).interval();
    let (lo, hi) = bracket::sqrt_bracket(&iv, bracket::digits_for(args.tolerance_exp));
    let shown = match bracket::exact_sqrt(&iv) {
        Some(r) => rat_string(&r),
        None => bracket::shorthand(&lo, &hi),
    };
    let hash = digest_uni(&rho_key(&rho));
    let out = match args.format {
        TextOrJson::Text => format!(
            "m {}\na {}\nspread_sq [{}, {}]\nspread {}\nresultant_hash {}\n",
            s.dim(),
            rat_string(&a),
            rat_string(&iv.lo),
            rat_string(&iv.hi),
            shown,
            hash
        ),
        TextOrJson::Json => {
            let doc = SpreadJson {
                m: s.dim(),
                a: rat_string(&a),
                spread_sq_lo: rat_string(&iv.lo),
                spread_sq_hi: rat_string(&iv.hi),
                spread_lo: lo,
                spread_hi: hi,
                resultant_hash: hash,
            };
            serde_json::to_string_pretty(&doc).expect("serialises") + "\n"
        }
    };
    write_or_print(None, &out)?;
    Ok(0)
}

fn sample(args: SampleArgs) -> Result<u8, CliError> {
    if args.m < 2 || args.n == 0 || args.bins == 0 {
        return Err(CliError::Usage("sample needs m >= 2, n >= 1 and bins >= 1".into()));
    }
    let mut cfg = SampleConfig::new(args.m, args.n, args.seed);
    cfg.bins = args.bins;
    cfg.workers = check_workers(&args.workers)?;
    let h = run_distribution(&cfg)?;
    if let Some(p) = &args.csv {
        fs::write(p, h.to_csv()).map_err(|e| io_err(p, e))?;
    }
    if let Some(p) = &args.summary {
        fs::write(p, h.summary_json()).map_err(|e| io_err(p, e))?;
    }
    if args.csv.is_none() && args.summary.is_none() {
        let text = match args.format {
            CsvOrJson::Csv => h.to_csv(),
            CsvOrJson::Json => h.summary_json(),
        };
        write_or_print(None, &text)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct StatsJson {
    m: usize,
    raw: String,
    graph_classes: usize,
    candidates: usize,
}

fn enumerate_stats(args: StatsArgs) -> Result<u8, CliError> {
    if !(2..=9).contains(&args.m) {
        return Err(CliError::Usage(format!("m = {} outside the supported range 2..=9", args.m)));
    }
    let (raw, u, cand) = enumeration_counts(args.m).map_err(|e| CliError::Usage(e.to_string()))?;
    let out = match args.format {
        TextOrJson::Text => format!(
            "m {}\nraw {}\ngraph_classes {}\ncandidates {}\n",
            args.m, raw, u, cand
        ),
        TextOrJson::Json => {
            let doc = StatsJson { m: args.m, raw: raw.to_string(), graph_classes: u, candidates: cand };
            serde_json::to_string_pretty(&doc).expect("serialises") + "\n"
        }
    };
    write_or_print(None, &out)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.cmd {
        Cmd::VerifyZero(a) => verify_zero(a),
        Cmd::VerifySymbolic(a) => verify_symbolic(a),
        Cmd::Spread(a) => spread(a),
        Cmd::Sample(a) => sample(a),
        Cmd::EnumerateStats(a) => enumerate_stats(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
