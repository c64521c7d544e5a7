//! Verification reports: one record per check plus RNG provenance.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const REPORT_VERSION: u32 = 1;

/// How `observed` is compared with `expected` and `tolerance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|observed - expected| <= tolerance` (complex modulus for pairs).
    Abs,
    /// `|observed - expected| <= tolerance |expected|`.
    Rel,
    /// `observed < tolerance`.
    Below,
    /// `observed > tolerance`.
    Above,
    /// `observed == expected`.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub relation: Relation,
    pub expected: Value,
    pub observed: Value,
    pub tolerance: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stream: Option<u64>,
}

/// JSON number, or `null` when not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

impl Check {
    fn new(name: impl Into<String>, relation: Relation, expected: Value, observed: Value, tolerance: Value, pass: bool) -> Self {
        Check {
            suite: String::new(),
            name: name.into(),
            relation,
            expected,
            observed,
            tolerance,
            pass,
            stream: None,
        }
    }

    pub fn abs(name: impl Into<String>, expected: f64, observed: f64, tol: f64) -> Self {
        let pass = (observed - expected).abs() <= tol;
        Self::new(name, Relation::Abs, num(expected), num(observed), num(tol), pass)
    }

    /// Complex comparison; values are reported as `[re, im]`.
    pub fn abs_complex(name: impl Into<String>, expected: (f64, f64), observed: (f64, f64), tol: f64) -> Self {
        let d = (observed.0 - expected.0).hypot(observed.1 - expected.1);
        let pass = d <= tol;
        let pair = |v: (f64, f64)| json!([num(v.0), num(v.1)]);
        Self::new(name, Relation::Abs, pair(expected), pair(observed), num(tol), pass)
    }

    pub fn rel(name: impl Into<String>, expected: f64, observed: f64, tol: f64) -> Self {
        let pass = (observed - expected).abs() <= tol * expected.abs();
        Self::new(name, Relation::Rel, num(expected), num(observed), num(tol), pass)
    }

    pub fn below(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self::new(name, Relation::Below, json!(0.0), num(observed), num(threshold), observed < threshold)
    }

    pub fn above(name: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Self::new(name, Relation::Above, Value::Null, num(observed), num(threshold), observed > threshold)
    }

    pub fn exact<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, observed: T) -> Self {
        let pass = expected == observed;
        let to = |v: &T| serde_json::to_value(v).unwrap_or(Value::Null);
        Self::new(name, Relation::Exact, to(&expected), to(&observed), json!(0), pass)
    }

    pub fn with_stream(mut self, stream: Option<u64>) -> Self {
        self.stream = stream;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RngProvenance {
    pub generator: String,
    pub seed: u64,
    pub seed_source: String,
    pub streams: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub command: String,
    pub target: String,
    pub params: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_version: u32,
    pub command: CommandEcho,
    pub rng: RngProvenance,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(command: CommandEcho, rng: RngProvenance, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            report_version: REPORT_VERSION,
            command,
            rng,
            checks,
            pass,
            wall_time_s: None,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_becomes_null() {
        let c = Check::abs("x", 1.0, f64::NAN, 0.1);
        assert!(!c.pass);
        assert_eq!(c.observed, Value::Null);
    }

    #[test]
    fn overall_pass_is_conjunction() {
        let echo = CommandEcho { command: "verify".into(), target: "t".into(), params: json!({}) };
        let rng = RngProvenance { generator: "g".into(), seed: 0, seed_source: "default".into(), streams: vec![] };
        let ok = Report::new(echo.clone(), rng.clone(), vec![Check::exact("a", 1, 1)]);
        assert!(ok.pass);
        let bad = Report::new(echo, rng, vec![Check::exact("a", 1, 1), Check::below("b", 2.0, 1.0)]);
        assert!(!bad.pass);
        let text = serde_json::to_string(&bad).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), bad);
    }
}
