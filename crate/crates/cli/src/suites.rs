//! Verification suites. Each suite is a list of jobs; job `k` of suite `s`
//! draws from stream `1000 s + k`, jobs run in parallel and their checks are
//! merged in job order, so reports do not depend on the thread count.

use std::f64::consts::PI;

use confmeasure::hankel::{
    cdf_abs_x1_n2, det_from_coeffs, det_invariant_n2, hankel_classical, mcmc_sample_det, partition_closed_form,
    partition_gamma_form, partition_mc, partition_recursion_factor, tail_n1, DetMeasureSpec, McmcConfig,
};
use confmeasure::invariant::Differential;
use confmeasure::loop_w::{
    c_coeff, c_coeff_subset, compositions, factorization_w_invariance, g_plus_ode, nilpotent_reduce, solve_g_plus,
    abelian_det_check, w_entries_combinatorial, w_from_g, w_oracle,
};
use confmeasure::measures::{
    ft_closed_form, ft_estimate, mu_l_density, mu_l_density_by_quadrature, mu_l_norm_cdf, quotient_onepoint_stat,
    sample_mu_l, MeasureSpec,
};
use confmeasure::rep_chars::{sym_power_multiplicities, tensor_decomp_check, wedge2_multiplicities, wedge_halfform_weights, SymSource};
use confmeasure::scalar::{cint, cratio, qc};
use confmeasure::schwarzian::{
    cocycle_residual_c, cocycle_residual_n, cocycle_residual_s, fit_w_constants, invert_schwarzian, schwarzian,
    QuadDifferential, UnivalentSeries, W_DISPLAY_LINEAR,
};
use confmeasure::stats::{ks_critical_001, ks_statistic, ks_two_sample, rayleigh_pvalue, two_sample_n};
use confmeasure::{ExactSeries, Mat, MatrixSeries, PowerSeries, RngStream, Series};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{param, ParamKind, ParamSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::Check;

pub const SUITES: [&str; 8] = [
    "partition",
    "gaussian",
    "product-ft",
    "quotient",
    "loop-w",
    "abelian",
    "schwarzian",
    "characters",
];

/// Keys accepted by `verify <suite>`.
pub fn suite_params(suite: &str) -> CliResult<&'static [ParamSpec]> {
    const SAMPLES: &[ParamSpec] = &[param("samples", ParamKind::Int)];
    const PARTITION: &[ParamSpec] = &[
        param("N", ParamKind::Int),
        param("p", ParamKind::Real),
        param("samples", ParamKind::Int),
    ];
    Ok(match suite {
        "partition" => PARTITION,
        "gaussian" | "product-ft" | "quotient" | "schwarzian" => SAMPLES,
        "loop-w" | "abelian" | "characters" | "all" => &[],
        other => {
            return Err(CliError::usage(format!(
                "unknown suite {other:?} (expected one of {}, all)",
                SUITES.join(", ")
            )))
        }
    })
}

type JobFn = Box<dyn Fn(&mut RngStream) -> CliResult<Vec<Check>> + Send + Sync>;

struct Job {
    random: bool,
    run: JobFn,
}

fn job(f: impl Fn(&mut RngStream) -> CliResult<Vec<Check>> + Send + Sync + 'static) -> Job {
    Job { random: true, run: Box::new(f) }
}

fn exact_job(f: impl Fn() -> CliResult<Vec<Check>> + Send + Sync + 'static) -> Job {
    Job { random: false, run: Box::new(move |_| f()) }
}

fn suite_index(suite: &str) -> u64 {
    SUITES.iter().position(|s| *s == suite).expect("known suite") as u64 + 1
}

/// Runs one suite (or `all`) and returns its checks in deterministic order.
pub fn run_verify(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let names: Vec<&str> = if cfg.target == "all" { SUITES.to_vec() } else { vec![cfg.target.as_str()] };
    let mut planned = Vec::new();
    for name in names {
        suite_params(name)?;
        let base = 1000 * suite_index(name);
        for (k, j) in build_jobs(name, cfg)?.into_iter().enumerate() {
            planned.push((name, base + k as u64, j));
        }
    }
    let results: Vec<CliResult<Vec<Check>>> = planned
        .par_iter()
        .map(|(suite, stream, j)| {
            let mut rng = RngStream::new(cfg.seed, *stream);
            let checks = (j.run)(&mut rng)?;
            Ok(checks
                .into_iter()
                .map(|mut c| {
                    c.suite = suite.to_string();
                    c.with_stream(j.random.then_some(*stream))
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn build_jobs(suite: &str, cfg: &RunConfig) -> CliResult<Vec<Job>> {
    match suite {
        "partition" => partition_jobs(cfg),
        "gaussian" => gaussian_jobs(cfg.count("samples", 100_000)?),
        "product-ft" => Ok(product_ft_jobs(cfg.count("samples", 100_000)?)),
        "quotient" => Ok(quotient_jobs(cfg.count("samples", 100_000)?)),
        "loop-w" => Ok(loop_w_jobs()),
        "abelian" => Ok(abelian_jobs()),
        "schwarzian" => schwarzian_jobs(cfg.count("samples", 40)?),
        "characters" => Ok(character_jobs()),
        other => Err(CliError::usage(format!("unknown suite {other:?}"))),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_series(rng: &mut RngStream, order: usize, scale: f64) -> Series {
    PowerSeries::new((0..=order).map(|_| rng.complex_normal() * scale).collect())
}

fn partition_jobs(cfg: &RunConfig) -> CliResult<Vec<Job>> {
    let samples = cfg.count("samples", 1_000_000)?;
    let cases: Vec<(usize, f64)> = match (cfg.opt_int("N"), cfg.opt_real("p")) {
        (Some(n), Some(p)) => {
            let n = usize::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| CliError::usage("--N must be >= 1"))?;
            vec![(n, p)]
        }
        (None, None) => vec![(1, 2.0), (2, 2.5), (3, 3.0)],
        _ => return Err(CliError::usage("--N and --p go together")),
    };
    let explicit = cases.len() == 1;
    let mut jobs: Vec<Job> = cases
        .into_iter()
        .map(|(n, p)| {
            job(move |rng| {
                let exact = partition_closed_form(p, n)?;
                let est = partition_mc(p, n, samples, rng)?;
                Ok(vec![Check::abs(format!("partition_mc[N={n},p={p}]"), exact, est.estimate, 4.0 * est.stderr)])
            })
        })
        .collect();
    if explicit {
        return Ok(jobs);
    }
    jobs.push(job(|rng| {
        let mut worst = 0.0f64;
        for _ in 0..10_000 {
            let scale = 10f64.powf(rng.random_range(-2.0..2.0));
            let x1 = rng.complex_normal() * scale;
            let x2 = rng.complex_normal() * scale;
            let b = det_invariant_n2(x1, x2);
            worst = worst.max((det_from_coeffs(&[x1, x2]) - b).abs() / b);
        }
        Ok(vec![Check::abs("n2_identity_max_rel_err", 0.0, worst, 1e-12)])
    }));
    jobs.push(job(|rng| {
        let (mut rec, mut gam) = (0.0f64, 0.0f64);
        for _ in 0..20 {
            let p = rng.random_range(2.05..6.0);
            for n in 1..=12 {
                let z = partition_closed_form(p, n)?;
                let ratio = partition_closed_form(p, n + 1)? / z;
                rec = rec.max((ratio / partition_recursion_factor(p, n) - 1.0).abs());
                gam = gam.max((PI.powi(n as i32) * partition_gamma_form(p, n) / z - 1.0).abs());
            }
        }
        Ok(vec![
            Check::abs("recursion_max_rel_err", 0.0, rec, 1e-13),
            Check::abs("gamma_form_max_rel_err", 0.0, gam, 1e-13),
        ])
    }));
    jobs.push(exact_job(|| {
        let mut matched = 0;
        for n in 1..=16usize {
            let x: ExactSeries = PowerSeries::new(
                (0..=n)
                    .map(|k| if k == 0 { cint(0) } else { qc((k as i64 * 3 - 7, 5), (2, k as i64)) })
                    .collect(),
            );
            let expected: BigRational = (1..=n)
                .map(|k| (x.coeff(k) * x.coeff(k).conj()).re * BigRational::from_integer((k as i64).into()))
                .sum();
            matched += (hankel_classical(&x, n).matrix.hs_norm_sqr() == expected) as usize;
        }
        Ok(vec![Check::exact("hs_norm_exact[N<=16]", 16, matched)])
    }));
    for (n, l) in [(1usize, 0.0), (1, 1.0), (2, 0.0), (2, 1.0)] {
        jobs.push(job(move |rng| {
            let spec = DetMeasureSpec::new(n, l)?;
            let config = McmcConfig::default();
            let chain = mcmc_sample_det(&spec, &config, rng)?;
            let abs: Vec<f64> = chain.samples.iter().map(|x| x[0].norm()).collect();
            let p = spec.exponent();
            let ks = if n == 1 {
                ks_statistic(&abs, |t| 1.0 - tail_n1(t, p))
            } else {
                ks_statistic(&abs, |t| cdf_abs_x1_n2(t, p))
            };
            Ok(vec![Check::below(format!("mcmc_marginal_ks[N={n},l={l}]"), ks, ks_critical_001(abs.len()))])
        }));
    }
    Ok(jobs)
}

fn gaussian_jobs(samples: usize) -> CliResult<Vec<Job>> {
    let mut jobs = Vec::new();
    for (k, (m, t)) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (1.5, 1.0), (1.0, 0.25)].into_iter().enumerate() {
        jobs.push(job(move |rng| {
            let spec = MeasureSpec::gaussian(m, t)?;
            let f = random_series(rng, 5, 0.4);
            let exact = ft_closed_form(&spec, &f)?;
            let (est, se) = ft_estimate(&spec, &f, samples, rng)?;
            Ok(vec![Check::abs_complex(
                format!("gaussian_ft[{k}:m={m},T={t}]"),
                (exact.re, exact.im),
                (est.re, est.im),
                4.0 * se,
            )])
        }));
    }
    jobs.push(job(|rng| {
        let mut worst = 0.0f64;
        for i in 0..20 {
            let l = [0.0, 0.5, 1.0, 2.5][i % 4];
            let theta = Differential::new(1.0, random_series(rng, i % 5, 0.8));
            let a = mu_l_density(&theta, l)?;
            let b = mu_l_density_by_quadrature(&theta, l)?;
            worst = worst.max((a - b).abs() / a);
        }
        Ok(vec![Check::abs("mixture_density_quadrature_max_rel_err", 0.0, worst, 1e-8)])
    }));
    // first n coefficients of a long draw against a short draw, and against
    // the exact law of the projected norm
    let (l, n, draws) = (1.0, 3usize, 20_000usize);
    let proj = move |th: &Differential<f64>| Differential::new(1.0, th.coeffs.truncate(n - 1)).norm_sqr();
    jobs.push(job(move |rng| {
        let long = (0..draws).map(|_| proj(&sample_mu_l(l, 12, rng)?)).collect::<Result<Vec<f64>, _>>()?;
        let short = (0..draws).map(|_| proj(&sample_mu_l(l, n - 1, rng)?)).collect::<Result<Vec<f64>, _>>()?;
        let d = ks_two_sample(&long, &short);
        let crit = ks_critical_001(two_sample_n(draws, draws).round() as usize);
        Ok(vec![Check::below("mixture_projection_two_sample_ks", d, crit)])
    }));
    jobs.push(job(move |rng| {
        let long = (0..draws).map(|_| proj(&sample_mu_l(l, 12, rng)?)).collect::<Result<Vec<f64>, _>>()?;
        let ks = ks_statistic(&long, |s| mu_l_norm_cdf(s, n, l).unwrap_or(f64::NAN));
        Ok(vec![Check::below("mixture_projection_marginal_ks", ks, ks_critical_001(draws))])
    }));
    Ok(jobs)
}

fn product_ft_jobs(samples: usize) -> Vec<Job> {
    (0..3)
        .map(|k| {
            job(move |rng| {
                let spec = MeasureSpec::product(MeasureSpec::gaussian(1.0, 1.0)?, MeasureSpec::gaussian(0.5, 1.5)?)?;
                // eight coefficients
                let f = random_series(rng, 7, 0.35);
                let exact = ft_closed_form(&spec, &f)?;
                let (est, se) = ft_estimate(&spec, &f, samples, rng)?;
                Ok(vec![Check::abs_complex(
                    format!("product_ft[{k}]"),
                    (exact.re, exact.im),
                    (est.re, est.im),
                    4.0 * se,
                )])
            })
        })
        .collect()
}

fn quotient_jobs(samples: usize) -> Vec<Job> {
    [1u32, 2]
        .into_iter()
        .map(|m| {
            job(move |rng| {
                let (ks, phases) = quotient_onepoint_stat(m, 1.0, samples, rng)?;
                Ok(vec![
                    Check::below(format!("quotient_ks[m={m}]"), ks, ks_critical_001(samples)),
                    Check::above(format!("quotient_phase_rayleigh_p[m={m}]"), rayleigh_pvalue(&phases), 1e-3),
                ])
            })
        })
        .collect()
}

/// Deterministic 2x2 rational symbols with small, varied entries.
fn exact_theta(order: usize, salt: i64) -> MatrixSeries<BigRational> {
    let coeffs = (0..order)
        .map(|k| {
            let k = k as i64 + salt;
            Mat::from_row_major(
                2,
                2,
                vec![
                    qc((k % 3 - 1, 2), (1, k + 2)),
                    qc((2 - k % 4, 3), (0, 1)),
                    qc((1, k + 1), (-(k % 2), 5)),
                    qc((k % 5 - 2, 7), (1, 3)),
                ],
            )
        })
        .collect();
    MatrixSeries::new(coeffs).expect("square blocks")
}

fn loop_w_jobs() -> Vec<Job> {
    vec![
        exact_job(|| {
            let n = 6;
            let (mut total, mut matched) = (0usize, 0usize);
            for salt in 0..3 {
                let theta = exact_theta(n, salt);
                let g = g_plus_ode(&theta, n);
                let oracle = w_oracle(&g, n, n, n)?;
                let via_g = w_from_g(&g.pad_to(2 * n - 1), n, n)?;
                for i in 0..n {
                    for j in 1..=n - i {
                        let comb = w_entries_combinatorial(&theta, i, j, n)?;
                        total += 1;
                        matched += (&comb == oracle.block(i, j) && &comb == via_g.block(i, j)) as usize;
                    }
                }
            }
            Ok(vec![Check::exact("w_cross_oracle_exact[i+j<=6,d=2]", total, matched)])
        }),
        exact_job(|| {
            let (mut total, mut matched) = (0usize, 0usize);
            for n in 1..=12 {
                for index in compositions(n) {
                    total += 1;
                    matched += (c_coeff::<BigRational>(&index) == c_coeff_subset::<BigRational>(&index)) as usize;
                }
            }
            Ok(vec![Check::exact("c_dual_formulas[order<=12]", total, matched)])
        }),
        exact_job(|| {
            let theta = exact_theta(6, 1);
            Ok(vec![Check::exact("g_plus_two_ways_exact", true, solve_g_plus(&theta, 6) == g_plus_ode(&theta, 6))])
        }),
        exact_job(|| {
            let gm = MatrixSeries::from_scalar(&Series::new(vec![c(1.0, 0.0), c(-0.2, 0.0)]));
            let x = Series::new(vec![c(0.0, 0.0), c(0.3, 0.1), c(-0.1, 0.2)]).pad_to(24);
            let gp = MatrixSeries::from_scalar(&x.exp()?);
            let g0 = Mat::from_fn(1, 1, |_, _| c(1.5, -0.5));
            let res = factorization_w_invariance(&gm, &g0, &gp, 256)?;
            Ok(vec![Check::abs("factorization_invariance[K=256,d=1]", 0.0, res, 1e-6)])
        }),
        job(|rng| {
            let mut gm = vec![Mat::identity(2)];
            gm.push(Mat::from_fn(2, 2, |_, _| rng.complex_normal() * 0.1));
            let gm = MatrixSeries::new(gm)?;
            let theta = MatrixSeries::new((0..3).map(|_| Mat::from_fn(2, 2, |_, _| rng.complex_normal() * 0.3)).collect())?;
            let gp = g_plus_ode(&theta, 30);
            let g0 = Mat::from_fn(2, 2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.2, 0.1) });
            let res = factorization_w_invariance(&gm, &g0, &gp, 128)?;
            Ok(vec![Check::abs("factorization_invariance[K=128,d=2]", 0.0, res, 1e-8)])
        }),
    ]
}

fn abelian_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = (1..=4usize)
        .map(|deg| {
            exact_job(move || {
                let x: ExactSeries = PowerSeries::new(
                    (0..=deg)
                        .map(|k| if k == 0 { cint(0) } else { qc((k as i64 - 3, 2), (1, k as i64)) })
                        .collect(),
                );
                let mut ok = true;
                for n in deg..=deg + 2 {
                    let r = nilpotent_reduce(&x, n)?;
                    ok &= r.matches_hankel && r.complement_zero && r.block == hankel_classical(&x, n).matrix;
                }
                Ok(vec![Check::exact(format!("nilpotent_reduction[deg={deg}]"), true, ok)])
            })
        })
        .collect();
    for k in 0..3 {
        jobs.push(job(move |rng| {
            // |x_k| <= 0.2
            let mut coeffs = vec![c(0.0, 0.0)];
            coeffs.extend((0..3).map(|_| Complex64::from_polar(0.2 * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>())));
            let (det, closed) = abelian_det_check(&Series::new(coeffs), 400)?;
            Ok(vec![Check::rel(format!("abelian_identity[{k}:K=400,deg=3]"), closed, det, 1e-4)])
        }));
    }
    jobs
}

type Q = Complex<BigRational>;

fn exact_tail(len: usize, salt: i64) -> Vec<Q> {
    (0..len as i64).map(|k| qc(((k * 7 + salt) % 5 - 2, k + 2), ((salt - k) % 3, 4))).collect()
}

fn schwarzian_jobs(samples: usize) -> CliResult<Vec<Job>> {
    if samples < 8 {
        return Err(CliError::usage("--samples must be at least 8 for the W fit"));
    }
    let mut jobs = vec![
        exact_job(|| {
            let mut worst = 0.0f64;
            for cc in [c(0.3, 0.0), c(-0.2, 0.4), c(0.0, 0.5)] {
                let tail: Vec<Complex64> = (1..=20).map(|k| cc.powi(k)).collect();
                let s = schwarzian(&UnivalentSeries::from_tail(&tail));
                worst = s.coeffs.coeffs().iter().map(|q| q.norm()).fold(worst, f64::max);
            }
            Ok(vec![Check::abs("moebius_schwarzian_max", 0.0, worst, 1e-12)])
        }),
        job(|rng| {
            let mut worst = [0.0f64; 3];
            for _ in 0..50 {
                let mut tail = || (0..10).map(|_| c(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))).collect::<Vec<_>>();
                let f = UnivalentSeries::from_tail(&tail());
                let g = UnivalentSeries::from_tail(&tail());
                worst[0] = worst[0].max(cocycle_residual_c(&f, &g));
                worst[1] = worst[1].max(cocycle_residual_n(&f, &g));
                worst[2] = worst[2].max(cocycle_residual_s(&f, &g));
            }
            Ok(["pre_schwarzian_c", "pre_schwarzian_n", "schwarzian"]
                .iter()
                .zip(worst)
                .map(|(n, w)| Check::abs(format!("cocycle_residual[{n}]"), 0.0, w, 1e-10))
                .collect())
        }),
        exact_job(|| {
            let mut tail = exact_tail(8, 2);
            tail[0] = cint(0);
            let u = UnivalentSeries::from_tail(&tail);
            let forward = invert_schwarzian(&schwarzian(&u), 8) == u;
            let q = QuadDifferential::from_q(&exact_tail(7, 3));
            let back = schwarzian(&invert_schwarzian(&q, 8));
            let backward = (2..=8).all(|k| back.q(k) == q.q(k));
            Ok(vec![Check::exact("roundtrip_exact[order<=8]", true, forward && backward)])
        }),
        exact_job(|| {
            let q = QuadDifferential::from_q(&exact_tail(3, 5));
            let u = invert_schwarzian(&q, 4);
            Ok(vec![
                Check::exact("u2_equals_q2_over_6", true, u.u(2) == q.q(2) * cratio(1, 6)),
                Check::exact("u3_equals_q3_over_24", true, u.u(3) == q.q(3) * cratio(1, 24)),
            ])
        }),
    ];
    // the two stability fits use disjoint streams; the first also feeds the
    // linear-part comparisons
    jobs.push(job(move |rng| {
        let a = fit_w_constants(samples, rng)?;
        let mut b_rng = rng.substream(1);
        let b = fit_w_constants(samples, &mut b_rng)?;
        let mut checks = Vec::new();
        for &(i, j, display) in W_DISPLAY_LINEAR.iter() {
            let e = a.entry(i, j).expect("fitted entry");
            checks.push(Check::abs(format!("w_display_linear[{i},{j}]"), display, e.linear, 1e-10));
        }
        let first_order = a
            .entries
            .iter()
            .map(|e| {
                let n = (e.i + e.j) as f64;
                let th = if n < 2.0 { 0.0 } else { 0.5 * (e.i as f64 - e.j as f64 + 1.0) / ((n + 1.0) * n * (n - 1.0)) };
                (e.linear - th).abs()
            })
            .fold(0.0, f64::max);
        checks.push(Check::abs("w_linear_first_order_max_dev", 0.0, first_order, 1e-10));
        checks.push(Check::abs("w_fit_max_residual", 0.0, a.max_residual().max(b.max_residual()), 1e-10));
        let spread = a.constants.iter().zip(&b.constants).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        checks.push(Check::abs("w_constants_stability", 0.0, spread, 1e-8));
        Ok(checks)
    }));
    Ok(jobs)
}

/// Multiplicities of `H^N` in `S^3(H^1)` for `N = 0..=12`.
pub const SYM3_TABLE: [i64; 13] = [0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2];

fn character_jobs() -> Vec<Job> {
    vec![
        exact_job(|| {
            let s3 = sym_power_multiplicities(3, SymSource::H1, 12)?;
            Ok(vec![Check::exact("sym3_multiplicities[N<=12]", SYM3_TABLE.to_vec(), s3)])
        }),
        exact_job(|| {
            let s2 = sym_power_multiplicities(2, SymSource::H1, 40)?;
            Ok(vec![Check::exact("sym2_equals_wedge2[N<=40]", wedge2_multiplicities(40), s2)])
        }),
        exact_job(|| {
            let r = tensor_decomp_check(1, 1, 40)?;
            Ok(vec![
                Check::exact("tensor_half_half_character", true, r.holds),
                Check::exact("tensor_half_half_multiplicities", vec![1i64; 41], r.multiplicities),
            ])
        }),
        exact_job(|| {
            let w = wedge_halfform_weights(2, 20)?;
            Ok(vec![Check::exact("wedge2_multiplicity_free", true, w.multiplicity_free && w.matches_character)])
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert_eq!(suite_params("nope").unwrap_err().exit_code(), 2);
        assert!(suite_params("all").unwrap().is_empty());
    }
}
