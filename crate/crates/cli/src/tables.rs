//! `table`: closed-form and combinatorial tables.

use confmeasure::hankel::{critical_exponent, partition_closed_form};
use confmeasure::rep_chars::{sym_power_multiplicities, wedge_halfform_weights, SymSource};
use confmeasure::schwarzian::{fit_w_constants, W_DISPLAY_LINEAR};
use confmeasure::RngStream;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{param, ParamKind, ParamSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::num;

pub const TABLES: [&str; 5] = [
    "partition-function",
    "critical-exponents",
    "sym-power-mults",
    "wedge-weights",
    "w-constants",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Null,
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Real(v) => num(*v).serialize(s),
            Cell::Text(v) => s.serialize_str(v),
            Cell::Null => s.serialize_unit(),
        }
    }
}

impl Cell {
    /// CSV field: shortest round-trip decimals, empty for null.
    pub fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) if v.is_finite() => format!("{v:?}"),
            Cell::Real(_) | Cell::Null => String::new(),
            Cell::Text(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalar facts about the whole table (JSON output only).
    pub summary: Map<String, Value>,
    /// Seed and stream when the table is randomized.
    pub rng: Option<(u64, u64)>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
            rng: None,
        }
    }
}

pub fn table_params(name: &str) -> CliResult<&'static [ParamSpec]> {
    const PARTITION: &[ParamSpec] = &[
        param("N", ParamKind::Int),
        param("Nmax", ParamKind::Int),
        param("p", ParamKind::Text),
    ];
    const CRITICAL: &[ParamSpec] = &[param("Nmax", ParamKind::Int)];
    const SYM: &[ParamSpec] = &[
        param("n", ParamKind::Text),
        param("Nmax", ParamKind::Int),
        param("source", ParamKind::Text),
    ];
    const WEDGE: &[ParamSpec] = &[param("n", ParamKind::Int), param("kmax", ParamKind::Int)];
    const W: &[ParamSpec] = &[param("samples", ParamKind::Int)];
    Ok(match name {
        "partition-function" => PARTITION,
        "critical-exponents" => CRITICAL,
        "sym-power-mults" => SYM,
        "wedge-weights" => WEDGE,
        "w-constants" => W,
        other => {
            return Err(CliError::usage(format!(
                "unknown table {other:?} (expected one of {})",
                TABLES.join(", ")
            )))
        }
    })
}

fn list<T: std::str::FromStr>(key: &str, raw: &str) -> CliResult<Vec<T>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--{key}: bad list entry {s:?}")))
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `num/den` in lowest terms, or an integer.
fn fraction(num: u64, den: u64) -> String {
    let g = gcd(num, den).max(1);
    if den / g == 1 {
        (num / g).to_string()
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

pub fn run_table(name: &str, cfg: &RunConfig) -> CliResult<Table> {
    table_params(name)?;
    match name {
        "partition-function" => {
            let ns: Vec<usize> = match (cfg.opt_int("N"), cfg.opt_int("Nmax")) {
                (Some(_), Some(_)) => return Err(CliError::usage("give --N or --Nmax, not both")),
                (Some(n), None) => vec![n.try_into().map_err(|_| CliError::usage("--N must be >= 1"))?],
                (None, m) => (1..=usize::try_from(m.unwrap_or(10)).map_err(|_| CliError::usage("--Nmax must be >= 1"))?).collect(),
            };
            if ns.contains(&0) {
                return Err(CliError::usage("--N must be >= 1"));
            }
            let ps: Vec<f64> = list("p", cfg.text("p").ok_or_else(|| CliError::usage("--p is required"))?)?;
            let mut t = Table::new(name, &["N", "p", "p_N", "Z"]);
            for &n in &ns {
                for &p in &ps {
                    let z = partition_closed_form(p, n).map_or(Cell::Null, Cell::Real);
                    t.rows.push(vec![Cell::Int(n as i64), Cell::Real(p), Cell::Real(critical_exponent(n)), z]);
                }
            }
            Ok(t)
        }
        "critical-exponents" => {
            let nmax = cfg.count("Nmax", 10)?;
            let mut t = Table::new(name, &["N", "p_N", "p_N_value"]);
            for n in 1..=nmax {
                t.rows.push(vec![
                    Cell::Int(n as i64),
                    Cell::Text(fraction(2 * n as u64 - 1, n as u64)),
                    Cell::Real(critical_exponent(n)),
                ]);
            }
            Ok(t)
        }
        "sym-power-mults" => {
            let ns: Vec<usize> = list("n", cfg.text("n").unwrap_or("3"))?;
            let nmax = cfg.count("Nmax", 12)?;
            let source = match cfg.text("source").unwrap_or("H1") {
                "H1" => SymSource::H1,
                "H2" => SymSource::H2,
                other => return Err(CliError::usage(format!("--source must be H1 or H2, got {other:?}"))),
            };
            let mut columns = vec!["n".to_string()];
            columns.extend((0..=nmax).map(|w| format!("N={w}")));
            let mut t = Table::new(name, &[]);
            t.columns = columns;
            for n in ns {
                let mults = sym_power_multiplicities(n, source, nmax)?;
                let mut row = vec![Cell::Int(n as i64)];
                row.extend(mults.into_iter().map(Cell::Int));
                t.rows.push(row);
            }
            t.summary.insert("source".into(), json!(cfg.text("source").unwrap_or("H1")));
            Ok(t)
        }
        "wedge-weights" => {
            let n = cfg.count("n", 2)?;
            let w = wedge_halfform_weights(n, cfg.count("kmax", 5)?)?;
            let mut t = Table::new(name, &["doubled_weight", "weight", "multiplicity", "predicted"]);
            let mut weights: Vec<i64> = w.observed.iter().map(|&(d, _)| d).chain(w.weights_doubled.iter().copied()).collect();
            weights.sort_unstable();
            weights.dedup();
            for d in weights {
                let m = w.observed.iter().find(|&&(x, _)| x == d).map_or(0, |&(_, m)| m);
                t.rows.push(vec![
                    Cell::Int(d),
                    Cell::Text(fraction(d as u64, 2)),
                    Cell::Int(m),
                    Cell::Int(w.weights_doubled.contains(&d) as i64),
                ]);
            }
            t.summary.insert("multiplicity_free".into(), json!(w.multiplicity_free));
            t.summary.insert("matches_prediction".into(), json!(w.matches_character));
            Ok(t)
        }
        "w-constants" => {
            let samples = cfg.count("samples", 40)?;
            let fit = fit_w_constants(samples, &mut RngStream::new(cfg.seed, 0))?;
            let mut t = Table::new(
                name,
                &["i", "j", "linear", "display_linear", "first_order_linear", "q2_squared", "residual"],
            );
            for (e, &(_, _, display)) in fit.entries.iter().zip(W_DISPLAY_LINEAR.iter()) {
                let n = (e.i + e.j) as f64;
                let first = if n < 2.0 { 0.0 } else { 0.5 * (e.i as f64 - e.j as f64 + 1.0) / ((n + 1.0) * n * (n - 1.0)) };
                let q22 = e.monomials.iter().position(|m| m == &[2, 2]).map_or(Cell::Null, |p| Cell::Real(e.coeffs[p]));
                t.rows.push(vec![
                    Cell::Int(e.i as i64),
                    Cell::Int(e.j as i64),
                    Cell::Real(e.linear),
                    Cell::Real(display),
                    Cell::Real(first),
                    q22,
                    Cell::Real(e.residual),
                ]);
            }
            for (k, v) in ["c", "c_prime", "c_double_prime", "d"].iter().zip(fit.constants) {
                t.summary.insert(k.to_string(), num(v));
            }
            t.rng = Some((cfg.seed, 0));
            Ok(t)
        }
        other => Err(CliError::usage(format!("unknown table {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce() {
        assert_eq!(fraction(1, 1), "1");
        assert_eq!(fraction(19, 10), "19/10");
        assert_eq!(fraction(4, 2), "2");
        assert_eq!(fraction(9, 2), "9/2");
    }

    #[test]
    fn csv_cells() {
        assert_eq!(Cell::Real(0.1).csv(), "0.1");
        assert_eq!(Cell::Real(1e-20).csv(), "1e-20");
        assert_eq!(Cell::Real(f64::INFINITY).csv(), "");
        assert_eq!(Cell::Null.csv(), "");
    }
}
