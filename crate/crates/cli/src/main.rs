//! Verification front end for matrix summability means of Fourier series.
//!
//! Subcommands: `classify` (row classes and separating witnesses), `kernel`
//! (kernel bound sweeps), `rates` (norm/pointwise rate experiments and the
//! rate suite), `conditions` (integral growth conditions), `corpus` (built-in
//! test functions). Each run writes `report.json`, `table.csv`, and for rate
//! runs `plot.svg` into `--out`; identical configs with the same seed and
//! `--threads 1` produce byte-identical outputs.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Outcome};
use config::RunConfig;
use output::OutputWriter;

#[derive(Parser)]
#[command(name = "summability", version, about = "Matrix summability means of Fourier series: class machinery, kernel bounds, and rate experiments")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; explicit flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for report.json / table.csv / plot.svg
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads (1 guarantees byte-identical reruns)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized searches
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// X-integration range for the generalized modulus: half | full
    #[arg(long, global = true)]
    domain: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify matrix rows into RBVS/HBVS/MRBVS/MHBVS or search witnesses
    Classify(ClassifyArgs),
    /// Verify the kernel bounds (lemma 1) or the kernel-sum estimate (lemma 2)
    Kernel(KernelArgs),
    /// Rate-of-approximation experiments and the corollary rate suite
    Rates(RatesArgs),
    /// Evaluate the integral growth conditions (2.6)/(2.7)/(2.8)/(Q)
    Conditions(ConditionsArgs),
    /// List the built-in test functions
    Corpus,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Matrix family: fejer | lal | norlund | csv:PATH
    #[arg(long)]
    matrix: Option<String>,
    /// Weight sequence: ones | harmonic | linear | geometric:R | csv:PATH
    #[arg(long)]
    p_weights: Option<String>,
    /// Largest row index
    #[arg(long = "n")]
    n_max: Option<usize>,
    /// Class to verify: rbvs | hbvs | mrbvs | mhbvs
    #[arg(long)]
    class: Option<String>,
    /// Witness search: mrbvs-not-rbvs | mhbvs-not-hbvs
    #[arg(long)]
    witness: Option<String>,
    /// Witness row length
    #[arg(long = "len")]
    witness_len: Option<usize>,
    /// Randomized attempts before giving up
    #[arg(long = "trials")]
    witness_trials: Option<usize>,
}

#[derive(Args)]
struct KernelArgs {
    /// Which estimate to check: 1 | 2
    #[arg(long)]
    lemma: Option<u8>,
    /// Largest kernel degree for the lemma-1 sweep
    #[arg(long)]
    kmax: Option<usize>,
    /// Grid size for the t-scan
    #[arg(long)]
    grid: Option<usize>,
    /// Matrix family for the lemma-2 sweep
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    p_weights: Option<String>,
    /// Row sweep, e.g. 16..512
    #[arg(long = "n")]
    n_list: Option<String>,
    /// Row class paired with the estimate: mrbvs | mhbvs
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args)]
struct RatesArgs {
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    p_weights: Option<String>,
    /// Function: corpus name (absx:0.5, weierstrass:0.5, cos, ...) or csv:PATH
    #[arg(long)]
    function: Option<String>,
    /// Modulus: power:A | powerlog:A,T | csv:PATH (default delta^(alpha+beta))
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Evaluation point; set it to run the pointwise experiment
    #[arg(long)]
    x: Option<f64>,
    /// Degrees, e.g. 16..512 or 16,64,256
    #[arg(long = "n")]
    n_list: Option<String>,
    /// Bound variant: thm1 | thm2 | thm3 | remark1
    #[arg(long)]
    variant: Option<String>,
    /// forward (MRBVS pairing) | reversed (MHBVS pairing)
    #[arg(long)]
    orientation: Option<String>,
    /// Run the corollary rate suite instead of a single experiment
    #[arg(long)]
    corollary: bool,
    /// Suite exponents, comma-separated
    #[arg(long)]
    alpha: Option<String>,
    /// Accept beta >= 1 - 1/p when t^-beta omega(t) is nondecreasing
    #[arg(long)]
    remark5: bool,
}

#[derive(Args)]
struct ConditionsArgs {
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Exponent for condition (Q); default beta + 1/(2p)
    #[arg(long)]
    gamma: Option<f64>,
    /// Evaluation point (required)
    #[arg(long)]
    x: Option<f64>,
    /// Conditions to evaluate, e.g. 2.6,2.7,Q
    #[arg(long)]
    conditions: Option<String>,
    #[arg(long = "n")]
    n_list: Option<String>,
    /// Also emit the delta/ratio membership table
    #[arg(long)]
    membership: bool,
    #[arg(long)]
    remark5: bool,
    /// Sup grid size for the membership sweep
    #[arg(long)]
    t_grid: Option<usize>,
    /// Inner x-quadrature size for the membership sweep
    #[arg(long)]
    x_quad: Option<usize>,
    /// Number of delta samples in the membership sweep
    #[arg(long)]
    delta_grid: Option<usize>,
}

fn flags_config(common: &CommonArgs, command: &Command) -> RunConfig {
    let mut cfg = RunConfig {
        out: common.out.clone(),
        threads: common.threads,
        seed: common.seed,
        domain: common.domain.clone(),
        ..RunConfig::default()
    };
    match command {
        Command::Classify(a) => {
            cfg.matrix = a.matrix.clone();
            cfg.p_weights = a.p_weights.clone();
            cfg.n_max = a.n_max;
            cfg.class = a.class.clone();
            cfg.witness = a.witness.clone();
            cfg.witness_len = a.witness_len;
            cfg.witness_trials = a.witness_trials;
        }
        Command::Kernel(a) => {
            cfg.lemma = a.lemma;
            cfg.kmax = a.kmax;
            cfg.grid = a.grid;
            cfg.matrix = a.matrix.clone();
            cfg.p_weights = a.p_weights.clone();
            cfg.n_list = a.n_list.clone();
            cfg.class = a.class.clone();
        }
        Command::Rates(a) => {
            cfg.matrix = a.matrix.clone();
            cfg.p_weights = a.p_weights.clone();
            cfg.function = a.function.clone();
            cfg.omega = a.omega.clone();
            cfg.p = a.p;
            cfg.beta = a.beta;
            cfg.x = a.x;
            cfg.n_list = a.n_list.clone();
            cfg.variant = a.variant.clone();
            cfg.orientation = a.orientation.clone();
            cfg.corollary = a.corollary.then_some(true);
            cfg.alpha = a.alpha.clone();
            cfg.remark5 = a.remark5.then_some(true);
        }
        Command::Conditions(a) => {
            cfg.function = a.function.clone();
            cfg.omega = a.omega.clone();
            cfg.p = a.p;
            cfg.beta = a.beta;
            cfg.gamma = a.gamma;
            cfg.x = a.x;
            cfg.conditions = a.conditions.clone();
            cfg.n_list = a.n_list.clone();
            cfg.membership = a.membership.then_some(true);
            cfg.remark5 = a.remark5.then_some(true);
            cfg.t_grid = a.t_grid;
            cfg.x_quad = a.x_quad;
            cfg.delta_grid = a.delta_grid;
        }
        Command::Corpus => {}
    }
    cfg
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let file_cfg = match &cli.common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let cfg = file_cfg
        .overlaid_with(flags_config(&cli.common, &cli.command))
        .normalized();
    if let Some(threads) = cfg.threads {
        if threads == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        // Ignore the error if a pool already exists (tests share a process).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let writer = OutputWriter::new(&cfg)?;
    match &cli.command {
        Command::Classify(_) => commands::classify::run(&cfg, &writer),
        Command::Kernel(_) => commands::kernel::run(&cfg, &writer),
        Command::Rates(_) => commands::rates::run(&cfg, &writer),
        Command::Conditions(_) => commands::conditions::run(&cfg, &writer),
        Command::Corpus => commands::corpus::run(&cfg, &writer),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
