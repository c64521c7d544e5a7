use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use confmeasure_cli::{accepted_params, execute, CliError, CliResult, Format, GlobalOptions, RunConfig, SEED_ENV};

#[derive(Parser)]
#[command(name = "confmeasure", version, about = "Verify, sample and tabulate conformally invariant measures")]
struct Cli {
    /// RNG seed (falls back to CONFMEASURE_SEED, then a fixed default).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json | csv
    #[arg(long, global = true, value_parser = ["json", "csv"])]
    format: Option<String>,
    /// Worker threads (all cores when absent).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Add wall-clock time to verification reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Suite, MeasureSpec or table name.
    name: String,
    /// Parameters as `--key value` or `--key=value`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    rest: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: partition, gaussian, product-ft, quotient,
    /// loop-w, abelian, schwarzian, characters or all.
    Verify(Target),
    /// Draw coefficient rows from a MeasureSpec such as "gaussian(m=1,T=1)".
    Sample(Target),
    /// Print a table: partition-function, critical-exponents,
    /// sym-power-mults, wedge-weights or w-constants.
    Table(Target),
}

fn run(cli: Cli) -> CliResult<i32> {
    let (command, target) = match &cli.command {
        Command::Verify(t) => ("verify", t),
        Command::Sample(t) => ("sample", t),
        Command::Table(t) => ("table", t),
    };
    let globals = GlobalOptions {
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format.as_deref().map(Format::parse).transpose()?,
        threads: cli.threads.map(|t| t as usize),
        timing: cli.timing,
    };
    let allowed = accepted_params(command, &target.name)?;
    let env_seed = std::env::var(SEED_ENV).ok();
    let cfg = RunConfig::build(command, &target.name, &target.rest, globals, allowed, env_seed)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    pool.install(|| execute(&cfg))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
