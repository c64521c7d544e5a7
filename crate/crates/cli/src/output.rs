//! Rendering reports, samples and tables as JSON or CSV.

use std::io::Write;

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliResult;
use crate::report::{num, Report, REPORT_VERSION};
use crate::sample::Samples;
use crate::tables::Table;

fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_string(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(std::io::Error::other)?;
    for r in rows {
        w.write_record(&r).map_err(std::io::Error::other)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn pretty(v: &impl serde::Serialize) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn render_report(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => pretty(report),
        Format::Csv => {
            let header: Vec<String> = ["suite", "name", "relation", "expected", "observed", "tolerance", "pass", "stream"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            csv_string(
                &header,
                report.checks.iter().map(|c| {
                    vec![
                        c.suite.clone(),
                        c.name.clone(),
                        csv_value(&serde_json::to_value(c.relation).unwrap_or(Value::Null)),
                        csv_value(&c.expected),
                        csv_value(&c.observed),
                        csv_value(&c.tolerance),
                        c.pass.to_string(),
                        c.stream.map_or(String::new(), |s| s.to_string()),
                    ]
                }),
            )
        }
    }
}

pub fn render_samples(samples: &Samples, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let rows: Vec<Value> = samples
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().flat_map(|z| [num(z.re), num(z.im)]).collect()))
                .collect();
            let mut s = serde_json::to_string(&rows)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_string(
            &samples.header(),
            samples
                .rows
                .iter()
                .map(|r| r.iter().flat_map(|z| [format!("{:?}", z.re), format!("{:?}", z.im)]).collect()),
        ),
    }
}

pub fn render_table(table: &Table, cfg: &RunConfig) -> CliResult<String> {
    match cfg.format {
        Format::Json => {
            let mut v = json!({
                "report_version": REPORT_VERSION,
                "table": table.name,
                "params": cfg.params_json(),
                "columns": table.columns,
                "rows": table.rows,
            });
            if !table.summary.is_empty() {
                v["summary"] = Value::Object(table.summary.clone());
            }
            if let Some((seed, stream)) = table.rng {
                v["rng"] = json!({ "generator": crate::GENERATOR, "seed": seed, "stream": stream });
            }
            pretty(&v)
        }
        Format::Csv => csv_string(&table.columns, table.rows.iter().map(|r| r.iter().map(|c| c.csv()).collect())),
    }
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(text: &str, cfg: &RunConfig) -> CliResult<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
