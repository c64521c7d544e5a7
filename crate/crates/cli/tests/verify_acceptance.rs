//! Acceptance criteria 1-14, one line each. Criteria 1-13 are read off a
//! `verify all --seed 42` report; 1 additionally times single-threaded runs
//! and 14 compares two reports byte for byte.

use std::process::{Command, ExitCode};

use confmeasure_cli::{Check, Report};

const SEED: &str = "42";

fn run(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_confmeasure"))
        .args(args)
        .env_remove("CONFMEASURE_SEED")
        .output()
        .expect("binary runs");
    (o.status.code(), o.stdout)
}

/// `(criterion, suite, name prefixes)`; every check of `verify all` belongs
/// to exactly one criterion.
const MAP: &[(u32, &str, &[&str])] = &[
    (1, "partition", &["partition_mc"]),
    (2, "partition", &["n2_identity"]),
    (3, "partition", &["recursion", "gamma_form"]),
    (4, "partition", &["hs_norm_exact"]),
    (5, "gaussian", &["gaussian_ft"]),
    (5, "product-ft", &["product_ft"]),
    (6, "quotient", &["quotient_"]),
    (7, "gaussian", &["mixture_"]),
    (8, "partition", &["mcmc_marginal"]),
    (9, "loop-w", &[""]),
    (10, "abelian", &[""]),
    (11, "schwarzian", &["moebius", "cocycle", "roundtrip", "u2_", "u3_"]),
    (12, "schwarzian", &["w_"]),
    (13, "characters", &[""]),
];

fn criterion_of(c: &Check) -> Option<u32> {
    MAP.iter()
        .find(|(_, suite, prefixes)| *suite == c.suite && prefixes.iter().any(|p| c.name.starts_with(p)))
        .map(|&(k, _, _)| k)
}

fn line(k: u32, pass: bool, detail: &str) -> bool {
    println!("criterion {k:>2}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn summarize(k: u32, checks: &[&Check]) -> (bool, String) {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} (observed {}, expected {}, tol {})", c.name, c.observed, c.expected, c.tolerance))
        .collect();
    let pass = !checks.is_empty() && failed.is_empty();
    let mut detail = format!("[{}/{} checks]", checks.len() - failed.len(), checks.len());
    if checks.is_empty() {
        detail.push_str(&format!(" no checks mapped to criterion {k}"));
    }
    for f in failed {
        detail.push_str("\n      failed: ");
        detail.push_str(&f);
    }
    (pass, detail)
}

fn main() -> ExitCode {
    let (code_a, a) = run(&["verify", "all", "--seed", SEED]);
    let (_, b) = run(&["verify", "all", "--seed", SEED]);
    let report: Report = match serde_json::from_slice(&a) {
        Ok(r) => r,
        Err(e) => {
            println!("verify all produced no report (exit {code_a:?}): {e}");
            return ExitCode::FAILURE;
        }
    };
    let unmapped: Vec<&str> = report.checks.iter().filter(|c| criterion_of(c).is_none()).map(|c| c.name.as_str()).collect();
    assert!(unmapped.is_empty(), "checks without a criterion: {unmapped:?}");

    let mut all = true;
    for k in 1..=13 {
        let checks: Vec<&Check> = report.checks.iter().filter(|c| criterion_of(c) == Some(k)).collect();
        let (mut pass, mut detail) = summarize(k, &checks);
        if k == 1 {
            // each case single-threaded at 10^6 samples in under a minute
            for (n, p) in [("1", "2"), ("2", "2.5"), ("3", "3")] {
                let (_, out) = run(&["verify", "partition", "--N", n, "--p", p, "--samples", "1000000", "--threads", "1", "--timing", "--seed", SEED]);
                let r: Report = serde_json::from_slice(&out).expect("partition report");
                let t = r.wall_time_s.unwrap_or(f64::INFINITY);
                pass &= r.pass && t < 60.0;
                detail.push_str(&format!(" N={n},p={p}: {t:.2} s"));
            }
        }
        all &= line(k, pass, &detail);
    }
    let same = a == b && !a.is_empty();
    all &= line(14, same, &format!("[{} bytes, runs {}]", a.len(), if same { "identical" } else { "differ" }));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
