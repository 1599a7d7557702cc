//! `madkit`: bias-corrected MAD on user data and the Monte-Carlo studies.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or input error, 3 failed
//! internal invariant check.

mod input;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use madkit::mad::{factor_tables_csv, mad_corrected, park_table, published_table, FactorModel};
use madkit::simulate::{
    self, format_sig, with_threads, FitResult, SimulationConfig, DEFAULT_CHUNK_SIZE,
    DEFAULT_EFFICIENCY_REPETITIONS, DEFAULT_FACTOR_REPETITIONS, DEFAULT_SENSITIVITY_REPETITIONS,
};
use madkit::{Error, MedianEstimatorKind, Sample};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "madkit",
    version,
    about = "Bias-corrected median absolute deviation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corrected MAD of numbers read from a file or stdin
    Mad(MadArgs),
    /// Estimate correction factors by simulation from normal samples
    Factors(SimArgs),
    /// Variance ratios of the corrected MADs against the sample-median MAD
    Efficiency(SimArgs),
    /// Dispersion of corrected MADs across repetitions for several distributions
    Sensitivity(SensitivityArgs),
    /// Least-squares fit of the large-n prediction equation
    Fit(FitArgs),
    /// Print the embedded correction-factor tables
    Tables(TablesArgs),
}

#[derive(Args)]
struct MadArgs {
    /// Input file; `-` reads stdin
    #[arg(default_value = "-")]
    input: String,
    /// sm, hd, thd-sqrt or thd(<width>)
    #[arg(long, default_value = "thd-sqrt")]
    estimator: String,
    /// recommended, exact2, table, asymptotic, croux-rousseeuw, williams,
    /// hayes, park, park-williams or fitted(alpha=..,beta=..)
    #[arg(long, default_value = "recommended")]
    model: String,
    /// File of `n,c_n` rows used as the factor table
    #[arg(long, conflicts_with = "model")]
    factor_table: Option<String>,
    /// Print one CSV row instead of a table
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct CommonSim {
    /// Sample sizes, e.g. `2,3,5` or `2..10`
    #[arg(long)]
    n: String,
    /// Repetitions per cell [default: depends on the study]
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "sm,hd,thd-sqrt")]
    estimators: String,
    /// Repetitions per work unit; part of the reproducibility key
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
    /// Worker threads; does not change results
    #[arg(long, env = "MADKIT_THREADS")]
    threads: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    common: CommonSim,
}

#[derive(Args)]
struct SensitivityArgs {
    #[command(flatten)]
    common: CommonSim,
    /// Distribution specs such as `cauchy(x0=0,gamma=1)`, separated by
    /// commas or semicolons, or `table5` for the full set
    #[arg(long, default_value = "table5")]
    dist: Vec<String>,
}

#[derive(Args)]
struct FitArgs {
    /// Estimators whose embedded tables are fitted
    #[arg(long, default_value = "sm")]
    estimator: String,
    /// Fitted range `low..high`, meaning low < n <= high
    #[arg(long, default_value = "100..500")]
    range: String,
    /// Fit the `c_n` column of a `factors` report instead of the tables
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct TablesArgs {
    /// sm, hd, thd-sqrt or park; all tables when omitted
    #[arg(long)]
    estimator: Option<String>,
}

enum Failure {
    Usage(String),
    Invariant(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => Failure::Invariant(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn emit(out: Option<&str>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("writing {path}: {e}")))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("writing stdout: {e}"))),
    }
}

fn provenance(seed: Option<u64>, reps: Option<usize>) -> String {
    let show = |v: Option<String>| v.unwrap_or_else(|| "none".into());
    format!(
        "# seed={} reps={} version={VERSION}\n",
        show(seed.map(|s| s.to_string())),
        show(reps.map(|r| r.to_string()))
    )
}

fn run_mad(args: MadArgs) -> Result<(), Failure> {
    let text = input::read_source(&args.input).map_err(usage)?;
    let values = input::parse_numbers(&text).map_err(usage)?;
    if values.len() < 2 {
        return Err(usage(format!(
            "need at least 2 numbers, got {}",
            values.len()
        )));
    }
    let kind: MedianEstimatorKind = args.estimator.parse()?;
    let model = match &args.factor_table {
        Some(path) => {
            let table = input::read_source(path).map_err(usage)?;
            FactorModel::Custom(input::parse_factor_table(&table).map_err(usage)?)
        }
        None => input::parse_model(&args.model).map_err(usage)?,
    };
    let sample = Sample::new(values)?;
    let v = mad_corrected(&sample, kind, &model)?;
    let text = if args.csv {
        format!(
            "n,estimator,model,mad0,c_n,mad_n\n{},{},{},{},{},{}\n",
            v.n,
            v.estimator,
            model.name(),
            format_sig(v.uncorrected),
            format_sig(v.factor),
            format_sig(v.corrected)
        )
    } else {
        format!(
            "n          {}\nestimator  {}\nmodel      {}\nMAD_0      {}\nC_n        {}\nMAD_n      {}\n",
            v.n,
            v.estimator,
            model.name(),
            format_sig(v.uncorrected),
            format_sig(v.factor),
            format_sig(v.corrected)
        )
    };
    emit(None, &text)
}

fn sim_config(common: &CommonSim, default_reps: usize) -> Result<SimulationConfig, Failure> {
    let sizes = input::parse_sizes(&common.n).map_err(usage)?;
    let estimators = input::parse_estimators(&common.estimators).map_err(usage)?;
    let config = SimulationConfig::new(sizes, common.reps.unwrap_or(default_reps), common.seed)
        .with_estimators(estimators)
        .with_chunk_size(common.chunk_size);
    config.validate()?;
    Ok(config)
}

fn run_study<F>(common: &CommonSim, config: &SimulationConfig, study: F) -> Result<(), Failure>
where
    F: FnOnce(&SimulationConfig, &mut Vec<u8>) -> madkit::Result<()> + Send,
{
    let mut body = Vec::new();
    with_threads(common.threads, || study(config, &mut body))??;
    let mut text = provenance(Some(config.master_seed), Some(config.repetitions));
    text.push_str(&String::from_utf8(body).expect("CSV output is UTF-8"));
    emit(common.out.as_deref(), &text)
}

fn run_fit(args: FitArgs) -> Result<(), Failure> {
    let range = input::parse_range(&args.range).map_err(usage)?;
    let kinds = input::parse_estimators(&args.estimator).map_err(usage)?;
    let report = match &args.from {
        Some(path) => Some(input::read_source(path).map_err(usage)?),
        None => None,
    };
    let mut results = Vec::new();
    for kind in kinds {
        let fit = match &report {
            Some(text) => {
                let points = input::parse_factor_report(text, kind).map_err(usage)?;
                simulate::fit_prediction(&kind.to_string(), &points, range)?
            }
            None => simulate::fit_published(kind, range)?,
        };
        results.push(fit);
    }
    let mut body = Vec::new();
    FitResult::write_csv(&results, &mut body)?;
    let mut text = provenance(None, None);
    text.push_str(&String::from_utf8(body).expect("CSV output is UTF-8"));
    emit(args.out.as_deref(), &text)
}

fn run_tables(args: TablesArgs) -> Result<(), Failure> {
    let Some(name) = args.estimator else {
        return emit(None, &factor_tables_csv());
    };
    let (column, table) = if name.trim().eq_ignore_ascii_case("park") {
        ("c_park", park_table())
    } else {
        let kind: MedianEstimatorKind = name.parse()?;
        let table = published_table(kind)
            .ok_or_else(|| usage(format!("no embedded table for estimator {kind}")))?;
        let column = match kind {
            MedianEstimatorKind::Sm => "c_sm",
            MedianEstimatorKind::Hd => "c_hd",
            _ => "c_thd_sqrt",
        };
        (column, table)
    };
    let mut text = format!("n,{column}\n");
    for (n, c) in table {
        text.push_str(&format!("{n},{c:.4}\n"));
    }
    emit(None, &text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Mad(args) => run_mad(args),
        Command::Factors(args) => {
            let config = sim_config(&args.common, DEFAULT_FACTOR_REPETITIONS)?;
            run_study(&args.common, &config, |c, out| {
                simulate::estimate_factors(c)?.write_csv(out)
            })
        }
        Command::Efficiency(args) => {
            let config = sim_config(&args.common, DEFAULT_EFFICIENCY_REPETITIONS)?;
            run_study(&args.common, &config, |c, out| {
                simulate::efficiency(c)?.write_csv(out)
            })
        }
        Command::Sensitivity(args) => {
            let dists = input::parse_distributions(&args.dist).map_err(usage)?;
            let config = sim_config(&args.common, DEFAULT_SENSITIVITY_REPETITIONS)?
                .with_distributions(dists);
            run_study(&args.common, &config, |c, out| {
                simulate::sensitivity(c)?.write_csv(out)
            })
        }
        Command::Fit(args) => run_fit(args),
        Command::Tables(args) => run_tables(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("madkit: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("madkit: internal check failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("madkit: {msg}");
            ExitCode::from(1)
        }
    }
}
