//! `sample`: coefficient rows drawn from a MeasureSpec.

use confmeasure::hankel::{mcmc_sample_det, McmcConfig};
use confmeasure::measures::{combine_sample, MeasureSpec};
use confmeasure::RngStream;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{param, ParamKind, ParamSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::grammar::parse_spec;

pub const SAMPLE_PARAMS: &[ParamSpec] = &[
    param("N", ParamKind::Int),
    param("count", ParamKind::Int),
    param("steps", ParamKind::Int),
    param("burn", ParamKind::Int),
];

/// Rows per RNG stream for the direct samplers.
pub const ROWS_PER_STREAM: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    /// Index `k` of each coefficient column pair.
    pub indices: Vec<usize>,
    pub rows: Vec<Vec<Complex64>>,
    pub streams: Vec<u64>,
}

impl Samples {
    pub fn header(&self) -> Vec<String> {
        self.indices.iter().flat_map(|k| [format!("re_{k}"), format!("im_{k}")]).collect()
    }
}

/// Draws `--count` rows of `--N` coefficients.
///
/// Gaussian-built specs are sampled directly, `ROWS_PER_STREAM` rows per
/// stream. `dethankel(N=,l=)` runs one Metropolis chain for `--steps`
/// sweeps after `--burn` and keeps every `steps/count`-th state; its rows
/// are `x_1..x_N` and `--N`, if given, must agree with the spec.
pub fn run_sample(spec_src: &str, cfg: &RunConfig) -> CliResult<Samples> {
    let spec = parse_spec(spec_src)?;
    if let MeasureSpec::DetHankel(d) = &spec {
        if cfg.opt_int("N").is_some_and(|n| n != d.n as i64) {
            return Err(CliError::usage("--N disagrees with dethankel(N=...)"));
        }
        let count = cfg.count("count", 10_000)?;
        let steps = cfg.count("steps", 200_000)?;
        if count == 0 || steps < count {
            return Err(CliError::usage("need 1 <= --count <= --steps"));
        }
        let config = McmcConfig {
            burn_in: cfg.count("burn", McmcConfig::default().burn_in)?,
            thin: steps / count,
            samples: count,
            ..McmcConfig::default()
        };
        let chain = mcmc_sample_det(d, &config, &mut RngStream::new(cfg.seed, 0))?;
        return Ok(Samples {
            indices: (1..=d.n).collect(),
            rows: chain.samples,
            streams: vec![0],
        });
    }
    if cfg.params.contains_key("steps") || cfg.params.contains_key("burn") {
        return Err(CliError::usage("--steps and --burn apply to dethankel only"));
    }
    let n = cfg.count("N", 16)?;
    let count = cfg.count("count", 1000)?;
    if n == 0 {
        return Err(CliError::usage("--N must be at least 1"));
    }
    let chunks: Vec<usize> = (0..count.div_ceil(ROWS_PER_STREAM)).collect();
    let parts: Vec<CliResult<Vec<Vec<Complex64>>>> = chunks
        .par_iter()
        .map(|&c| {
            let mut rng = RngStream::new(cfg.seed, c as u64);
            let rows = ROWS_PER_STREAM.min(count - c * ROWS_PER_STREAM);
            (0..rows)
                .map(|_| {
                    let d = combine_sample(&spec, n - 1, &mut rng)?;
                    Ok((0..n).map(|k| *d.coeffs.coeff(k)).collect())
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(count);
    for p in parts {
        rows.extend(p?);
    }
    Ok(Samples {
        indices: (0..n).collect(),
        rows,
        streams: chunks.iter().map(|&c| c as u64).collect(),
    })
}
