use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mzv_core::algebra::{shuffle_indices, star_expand, stuffle, AlgebraError, FormalSum};
use mzv_core::eval::{real, EvalConfig, EvalError, Evaluator, ValueCache};
use mzv_core::identities::{families, Bound, IdentityError, Ranges, EULER_SPECIALS};
use mzv_core::index::IndexError;
use mzv_core::parse::parse_index;
use mzv_core::verify::{self, SuiteConfig, VerifyError, MAX_TOLERANCE, MIN_TOLERANCE};
use mzv_core::{rational, Executor, SignedIndex};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGENT: u8 = 3;
const EXIT_PRECISION: u8 = 4;
const EXIT_CORRUPT_CACHE: u8 = 5;

#[derive(Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values: evaluation, algebra and identity verification")]
struct Cli {
    /// Value cache file (NDJSON). Defaults to $XDG_CACHE_HOME/mzv/values.ndjson.
    #[arg(long, global = true, env = "MZV_CACHE")]
    cache: Option<PathBuf>,
    /// Keep values in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for batch evaluation (1 = sequential).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Series length budget per evaluation.
    #[arg(long, global = true, default_value_t = EvalConfig::default().max_series_terms)]
    max_terms: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an index or a formal sum such as "z(2,1)" or "2*z(3) - zs(1,2)".
    Eval {
        expr: String,
        #[arg(long, default_value_t = verify::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Run identity suites and report residuals.
    Verify {
        /// Comma-separated suite ids, or "all".
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = verify::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        p_max: Option<u32>,
        #[arg(long)]
        q_max: Option<u32>,
        #[arg(long)]
        w_max: Option<u32>,
        /// Comma-separated rationals such as "0,1,-1,-2,3/2".
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Seed for randomly sampled instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write a CSV table here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print only the summary line.
        #[arg(long)]
        quiet: bool,
    },
    /// Dual index under reverse-and-swap of the word.
    Dual { index: String },
    /// Shuffle product of two indices.
    Shuffle { a: String, b: String },
    /// Harmonic (stuffle) product of two indices.
    Stuffle { a: String, b: String },
    /// Expand a zeta-star value into zeta values.
    Star { index: String },
    /// Inspect or rebuild the value cache.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
    /// List the identity families and their default ranges.
    ListIdentities,
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Entry counts per precision tier.
    Stats,
    /// Recompute every entry and replace those that disagree.
    Rebuild {
        /// Drop unreadable lines instead of failing.
        #[arg(long)]
        drop_corrupt: bool,
    },
    /// Print the cache file location.
    Path,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        let code = match e {
            EvalError::DivergentIndex(_) => EXIT_DIVERGENT,
            EvalError::PrecisionUnreachable(_) => EXIT_PRECISION,
            EvalError::InvalidArgument(_) => EXIT_USAGE,
            EvalError::CacheCorrupt { .. } => EXIT_CORRUPT_CACHE,
            EvalError::Io(_) => EXIT_FAILED,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Index(i) => i.into(),
            other => EvalError::from(other).into(),
        }
    }
}

impl From<IndexError> for Failure {
    fn from(e: IndexError) -> Self {
        let code = match e {
            IndexError::NotAdmissible(_) | IndexError::NonAdmissibleWord(_) => EXIT_DIVERGENT,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Eval(e) => e.into(),
            VerifyError::InvalidConfig(_) | VerifyError::UnknownSuite(_) => Failure::new(EXIT_USAGE, e.to_string()),
            VerifyError::Identity(IdentityError::Algebra(a)) => a.into(),
            VerifyError::Identity(_) => Failure::new(EXIT_USAGE, e.to_string()),
            VerifyError::Io(_) | VerifyError::Csv(_) => Failure::new(EXIT_FAILED, e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILED, e.to_string())
    }
}

fn default_cache_path() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("mzv").join("values.ndjson"))
}

impl Cli {
    fn cache_path(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        self.cache.clone().or_else(default_cache_path)
    }

    fn open_cache(&self) -> Result<ValueCache, Failure> {
        match self.cache_path() {
            Some(p) => Ok(ValueCache::open(p)?),
            None => Ok(ValueCache::in_memory()),
        }
    }

    fn evaluator(&self, cache: ValueCache) -> Result<Evaluator, Failure> {
        if self.workers == Some(0) {
            return Err(Failure::new(EXIT_USAGE, "--workers must be at least 1"));
        }
        let config = EvalConfig { max_series_terms: self.max_terms, ..EvalConfig::default() };
        Ok(Evaluator::with_cache(cache).config(config).executor(Executor::parallel(self.workers)))
    }
}

fn flush(ev: &Evaluator) -> Result<(), Failure> {
    if let Some(parent) = ev.cache().path().and_then(|p| p.parent()) {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(ev.cache().flush()?)
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tol) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("--tol {tol:e} outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]"),
        ));
    }
    Ok(())
}

fn cmd_eval(cli: &Cli, expr: &str, tol: f64) -> Result<u8, Failure> {
    check_tol(tol)?;
    let sum = FormalSum::parse(expr)?;
    let ev = cli.evaluator(cli.open_cache()?)?;
    let r = ev.eval_sum(&sum, tol)?;
    let c = ev.counters();
    flush(&ev)?;
    let provenance = if c.misses == 0 { "cache hit" } else { "computed" };
    println!("expr         {expr}");
    println!("value        {}", r.to_fixed(real::digits_for(tol)));
    println!("error_bound  {:.3e}", r.error_bound);
    println!("tolerance    {tol:e}");
    println!("provenance   {provenance} ({} hits, {} misses)", c.hits, c.misses);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cli: &Cli,
    suite: &[String],
    tol: f64,
    p_max: Option<u32>,
    q_max: Option<u32>,
    w_max: Option<u32>,
    lambda: &[String],
    seed: u64,
    report: Option<PathBuf>,
    csv: Option<PathBuf>,
    quiet: bool,
) -> Result<u8, Failure> {
    let lambdas = if lambda.is_empty() {
        None
    } else {
        let parsed: Option<Vec<_>> = lambda.iter().map(|s| rational::parse(s.trim())).collect();
        Some(parsed.ok_or_else(|| Failure::new(EXIT_USAGE, format!("cannot parse --lambda {}", lambda.join(","))))?)
    };
    let cfg = SuiteConfig {
        suites: suite.to_vec(),
        ranges: Ranges { p_max, q_max, w_max, lambdas, seed },
        tol,
        workers: cli.workers,
        cache: cli.cache_path(),
        report,
        csv,
    };
    cfg.validate()?;
    let ev = cli.evaluator(cli.open_cache()?)?;
    let rep = verify::run(&cfg, &ev)?;
    flush(&ev)?;
    if let Some(p) = &cfg.report {
        rep.write_json(p)?;
    }
    if let Some(p) = &cfg.csv {
        rep.write_csv(std::fs::File::create(p)?)?;
    }
    if quiet {
        println!(
            "{} instances: {} passed, {} failed",
            rep.summary.total, rep.summary.passed, rep.summary.failed
        );
    } else {
        print!("{}", rep.table());
    }
    println!(
        "elapsed {:.1}s on {}, cache {} hits / {} misses",
        rep.run.elapsed_ms / 1e3,
        rep.run.executor,
        rep.run.cache_hits,
        rep.run.cache_misses
    );
    Ok(if rep.all_passed() { 0 } else { EXIT_FAILED })
}

fn index_arg(text: &str) -> Result<SignedIndex, Failure> {
    Ok(parse_index(text)?)
}

fn cmd_cache(cli: &Cli, action: &CacheCmd) -> Result<u8, Failure> {
    match action {
        CacheCmd::Path => {
            match cli.cache_path() {
                Some(p) => println!("{}", p.display()),
                None => println!("(in memory)"),
            }
            Ok(0)
        }
        CacheCmd::Stats => {
            let cache = cli.open_cache()?;
            println!("path     {}", cache.path().map(|p| p.display().to_string()).unwrap_or("(in memory)".into()));
            println!("entries  {}", cache.len());
            for (tier, n) in cache.counts_by_tier() {
                println!("tier {tier:<3} {n} (tol 1e-{})", 6 * tier);
            }
            Ok(0)
        }
        CacheCmd::Rebuild { drop_corrupt } => {
            let path = cli.cache_path().ok_or_else(|| Failure::new(EXIT_USAGE, "no cache file to rebuild"))?;
            let cache = if *drop_corrupt {
                let load = ValueCache::open_lenient(&path)?;
                for line in &load.skipped {
                    eprintln!("dropped unreadable line {line}");
                }
                load.cache
            } else {
                ValueCache::open(&path)?
            };
            let ev = cli.evaluator(cache)?;
            let rep = ev.rebuild_cache()?;
            println!("checked {} entries, replaced {}", rep.checked, rep.mismatched);
            Ok(0)
        }
    }
}

fn cmd_list() {
    for f in families() {
        let range = match f.bound {
            Bound::P => format!("p <= {}", f.default_max),
            Bound::W => format!("w <= {}", f.default_max),
            Bound::Fixed => "fixed".to_string(),
        };
        let note = if f.in_all { "" } else { " (not in all)" };
        println!("{:<26} {:<10} {}{note}", f.id, range, f.summary);
    }
    for s in EULER_SPECIALS {
        println!("{:<26} {:<10} one form of euler-special", format!("euler-special:{}", s.name()), "p <= 8");
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Eval { expr, tol } => cmd_eval(cli, expr, *tol),
        Cmd::Verify { suite, tol, p_max, q_max, w_max, lambda, seed, report, csv, quiet } => cmd_verify(
            cli,
            suite,
            *tol,
            *p_max,
            *q_max,
            *w_max,
            lambda,
            *seed,
            report.clone(),
            csv.clone(),
            *quiet,
        ),
        Cmd::Dual { index } => {
            println!("{}", index_arg(index)?.dual()?);
            Ok(0)
        }
        Cmd::Shuffle { a, b } => {
            println!("{}", shuffle_indices(&index_arg(a)?, &index_arg(b)?)?);
            Ok(0)
        }
        Cmd::Stuffle { a, b } => {
            println!("{}", stuffle(&index_arg(a)?, &index_arg(b)?)?);
            Ok(0)
        }
        Cmd::Star { index } => {
            println!("{}", star_expand(&index_arg(index)?.with_star(true))?);
            Ok(0)
        }
        Cmd::Cache { action } => cmd_cache(cli, action),
        Cmd::ListIdentities => {
            cmd_list();
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
