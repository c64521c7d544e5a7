//! Command-line harness for `confmeasure`: verification suites, samplers and
//! tables with reproducible seeds and JSON or CSV output.

pub mod config;
pub mod error;
pub mod grammar;
pub mod output;
pub mod report;
pub mod sample;
pub mod suites;
pub mod tables;

use std::time::Instant;

pub use config::{Format, GlobalOptions, RunConfig, DEFAULT_SEED, SEED_ENV};
pub use error::{CliError, CliResult};
pub use report::{Check, Report};

use report::{CommandEcho, RngProvenance};

/// Name of the generator behind every stream.
pub const GENERATOR: &str = "ChaCha8";

/// Builds the report for `verify <suite>`.
pub fn verify(cfg: &RunConfig) -> CliResult<Report> {
    let start = Instant::now();
    let checks = suites::run_verify(cfg)?;
    let mut streams: Vec<u64> = checks.iter().filter_map(|c| c.stream).collect();
    streams.sort_unstable();
    streams.dedup();
    let mut report = Report::new(
        CommandEcho {
            command: cfg.command.clone(),
            target: cfg.target.clone(),
            params: cfg.params_json(),
        },
        RngProvenance {
            generator: GENERATOR.into(),
            seed: cfg.seed,
            seed_source: cfg.seed_source.into(),
            streams,
        },
        checks,
    );
    if cfg.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Runs a parsed command and writes its output. Returns the exit status.
pub fn execute(cfg: &RunConfig) -> CliResult<i32> {
    match cfg.command.as_str() {
        "verify" => {
            let report = verify(cfg)?;
            output::emit(&output::render_report(&report, cfg.format)?, cfg)?;
            for c in report.failed() {
                eprintln!("FAIL {}/{}: observed {} expected {} tolerance {}", c.suite, c.name, c.observed, c.expected, c.tolerance);
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        "sample" => {
            let samples = sample::run_sample(&cfg.target, cfg)?;
            output::emit(&output::render_samples(&samples, cfg.format)?, cfg)?;
            Ok(0)
        }
        "table" => {
            let table = tables::run_table(&cfg.target, cfg)?;
            output::emit(&output::render_table(&table, cfg)?, cfg)?;
            Ok(0)
        }
        other => Err(CliError::usage(format!("unknown command {other:?}"))),
    }
}

/// Keys accepted by `command target`.
pub fn accepted_params(command: &str, target: &str) -> CliResult<&'static [config::ParamSpec]> {
    match command {
        "verify" => suites::suite_params(target),
        "sample" => Ok(sample::SAMPLE_PARAMS),
        "table" => tables::table_params(target),
        other => Err(CliError::usage(format!("unknown command {other:?}"))),
    }
}
