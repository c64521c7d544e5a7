//! Run configuration: typed `--key value` parameters, seed resolution and
//! output options.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Seed used when neither `--seed` nor `CONFMEASURE_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_011_117;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "CONFMEASURE_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    Real,
    /// `"re,im"`
    Complex,
    Path,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Path(PathBuf),
    Text(String),
}

impl ParamValue {
    pub fn to_json(&self) -> Value {
        match self {
            ParamValue::Int(v) => json!(v),
            ParamValue::Real(v) => json!(v),
            ParamValue::Complex(z) => json!(format!("{:?},{:?}", z.re, z.im)),
            ParamValue::Path(p) => json!(p.display().to_string()),
            ParamValue::Text(s) => json!(s),
        }
    }
}

/// Accepted key of a command.
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: ParamKind,
}

pub const fn param(key: &'static str, kind: ParamKind) -> ParamSpec {
    ParamSpec { key, kind }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::usage(format!("unknown format {other:?} (json | csv)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GlobalOptions {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub target: String,
    pub params: BTreeMap<String, ParamValue>,
    pub seed: u64,
    /// `"flag"`, `"env"` or `"default"`.
    pub seed_source: &'static str,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub timing: bool,
}

fn parse_value(key: &str, kind: ParamKind, raw: &str) -> CliResult<ParamValue> {
    let bad = |what: &str| CliError::usage(format!("--{key}: expected {what}, got {raw:?}"));
    Ok(match kind {
        ParamKind::Int => ParamValue::Int(raw.parse().map_err(|_| bad("an integer"))?),
        ParamKind::Real => ParamValue::Real(raw.parse().map_err(|_| bad("a real number"))?),
        ParamKind::Complex => ParamValue::Complex(parse_complex(raw).ok_or_else(|| bad("\"re,im\""))?),
        ParamKind::Path => ParamValue::Path(PathBuf::from(raw)),
        ParamKind::Text => ParamValue::Text(raw.to_string()),
    })
}

/// `"re,im"` or a bare real.
pub fn parse_complex(raw: &str) -> Option<Complex64> {
    let raw = raw.trim();
    match raw.split_once(',') {
        Some((re, im)) => Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?)),
        None => Some(Complex64::new(raw.parse().ok()?, 0.0)),
    }
}

fn parse_seed(raw: &str, source: &str) -> CliResult<u64> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{source}: seed must be an unsigned 64-bit integer, got {raw:?}")))
}

impl RunConfig {
    /// Builds a configuration from the trailing `--key value` (or
    /// `--key=value`) words of a command. Global flags appearing among them
    /// override `globals`; any other key must be listed in `allowed`.
    pub fn build(
        command: &str,
        target: &str,
        rest: &[String],
        mut globals: GlobalOptions,
        allowed: &[ParamSpec],
        env_seed: Option<String>,
    ) -> CliResult<Self> {
        let mut params = BTreeMap::new();
        let mut i = 0;
        while i < rest.len() {
            let word = &rest[i];
            let Some(stripped) = word.strip_prefix("--") else {
                return Err(CliError::usage(format!("unexpected argument {word:?}")));
            };
            let (key, value) = match stripped.split_once('=') {
                Some((k, v)) => (k.to_string(), Some(v.to_string())),
                None => (stripped.to_string(), None),
            };
            if key == "timing" && value.is_none() {
                globals.timing = true;
                i += 1;
                continue;
            }
            let value = match value {
                Some(v) => v,
                None => {
                    i += 1;
                    rest.get(i)
                        .cloned()
                        .ok_or_else(|| CliError::usage(format!("--{key} needs a value")))?
                }
            };
            i += 1;
            match key.as_str() {
                "seed" => globals.seed = Some(parse_seed(&value, "--seed")?),
                "out" => globals.out = Some(PathBuf::from(value)),
                "format" => globals.format = Some(Format::parse(&value)?),
                "threads" => {
                    globals.threads = Some(
                        value
                            .parse()
                            .ok()
                            .filter(|&t: &usize| t >= 1)
                            .ok_or_else(|| CliError::usage("--threads must be a positive integer"))?,
                    )
                }
                _ => {
                    let spec = allowed.iter().find(|p| p.key == key).ok_or_else(|| {
                        let keys: Vec<&str> = allowed.iter().map(|p| p.key).collect();
                        CliError::usage(format!(
                            "unknown key --{key} for {command} {target} (accepted: {})",
                            if keys.is_empty() { "none".to_string() } else { keys.join(", ") }
                        ))
                    })?;
                    if params.insert(key.clone(), parse_value(&key, spec.kind, &value)?).is_some() {
                        return Err(CliError::usage(format!("--{key} given twice")));
                    }
                }
            }
        }
        let (seed, seed_source) = match (globals.seed, env_seed) {
            (Some(s), _) => (s, "flag"),
            (None, Some(env)) => (parse_seed(&env, SEED_ENV)?, "env"),
            (None, None) => (DEFAULT_SEED, "default"),
        };
        Ok(RunConfig {
            command: command.to_string(),
            target: target.to_string(),
            params,
            seed,
            seed_source,
            out: globals.out,
            format: globals.format.unwrap_or_default(),
            threads: globals.threads,
            timing: globals.timing,
        })
    }

    pub fn int(&self, key: &str, default: i64) -> i64 {
        match self.params.get(key) {
            Some(ParamValue::Int(v)) => *v,
            _ => default,
        }
    }

    pub fn opt_int(&self, key: &str) -> Option<i64> {
        match self.params.get(key) {
            Some(ParamValue::Int(v)) => Some(*v),
            _ => None,
        }
    }

    /// Non-negative integer parameter.
    pub fn count(&self, key: &str, default: usize) -> CliResult<usize> {
        let v = self.int(key, default as i64);
        usize::try_from(v).map_err(|_| CliError::usage(format!("--{key} must be non-negative, got {v}")))
    }

    pub fn real(&self, key: &str, default: f64) -> f64 {
        self.opt_real(key).unwrap_or(default)
    }

    pub fn opt_real(&self, key: &str) -> Option<f64> {
        match self.params.get(key) {
            Some(ParamValue::Real(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.params.get(key) {
            Some(ParamValue::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn params_json(&self) -> Value {
        Value::Object(self.params.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEYS: &[ParamSpec] = &[param("N", ParamKind::Int), param("p", ParamKind::Real), param("c", ParamKind::Complex)];

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn build(rest: &str, env: Option<&str>) -> CliResult<RunConfig> {
        RunConfig::build("verify", "x", &words(rest), GlobalOptions::default(), KEYS, env.map(String::from))
    }

    #[test]
    fn typed_values_and_both_spellings() {
        let cfg = build("--N 3 --p=2.5 --c 1,-2", None).unwrap();
        assert_eq!(cfg.int("N", 0), 3);
        assert_eq!(cfg.real("p", 0.0), 2.5);
        assert_eq!(cfg.params["c"], ParamValue::Complex(Complex64::new(1.0, -2.0)));
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(build("", None).unwrap().seed, DEFAULT_SEED);
        assert_eq!(build("", Some("7")).unwrap().seed, 7);
        let cfg = build("--seed 9", Some("7")).unwrap();
        assert_eq!((cfg.seed, cfg.seed_source), (9, "flag"));
        assert!(build("", Some("x")).is_err());
    }

    #[test]
    fn rejections() {
        for bad in ["--q 1", "--N", "--N 1.5", "--N 1 --N 2", "stray", "--threads 0", "--format xml"] {
            assert_eq!(build(bad, None).unwrap_err().exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn globals_inside_the_trailing_words() {
        let cfg = build("--N 2 --format csv --out o.csv --threads 3 --timing", None).unwrap();
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.out, Some(PathBuf::from("o.csv")));
        assert_eq!((cfg.threads, cfg.timing), (Some(3), true));
    }
}
