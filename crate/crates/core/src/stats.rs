//! Small statistical toolkit for the Monte Carlo checks.

use num_complex::Complex64;
use statrs::function::gamma::gamma_ur;

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Complex mean and standard error `sqrt(E|X - mean|^2 / n)`.
pub fn complex_mean_stderr(xs: &[Complex64]) -> (Complex64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (Complex64::new(f64::NAN, f64::NAN), f64::NAN);
    }
    let mean = xs.iter().sum::<Complex64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic Kolmogorov tail `P(D > d)` for effective sample size `n`,
/// with the Stephens small-sample correction.
pub fn kolmogorov_pvalue(d: f64, n: f64) -> f64 {
    let sn = n.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Effective sample size `n m / (n + m)` for the two-sample test.
pub fn two_sample_n(na: usize, nb: usize) -> f64 {
    (na * nb) as f64 / (na + nb) as f64
}

/// Critical value of the one-sample KS statistic at significance 0.001.
pub fn ks_critical_001(n: usize) -> f64 {
    1.95 / (n as f64).sqrt()
}

/// Rayleigh test of uniformity on the circle; returns the p-value.
pub fn rayleigh_pvalue(angles: &[f64]) -> f64 {
    let n = angles.len() as f64;
    let (c, s) = angles
        .iter()
        .fold((0.0, 0.0), |(c, s), a| (c + a.cos(), s + a.sin()));
    let r = (c * c + s * s).sqrt() / n;
    let z = n * r * r;
    let p = (-z).exp() * (1.0 + (2.0 * z - z * z) / (4.0 * n)
        - (24.0 * z - 132.0 * z * z + 76.0 * z.powi(3) - 9.0 * z.powi(4)) / (288.0 * n * n));
    p.clamp(0.0, 1.0)
}

/// Pearson chi-square test of independence for a contingency table;
/// returns the p-value.
pub fn chi2_independence_pvalue(table: &[Vec<f64>]) -> f64 {
    let rows = table.len();
    let cols = table.first().map_or(0, |r| r.len());
    let total: f64 = table.iter().flatten().sum();
    let row_sums: Vec<f64> = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<f64> = (0..cols).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let mut stat = 0.0;
    for i in 0..rows {
        for j in 0..cols {
            let e = row_sums[i] * col_sums[j] / total;
            if e > 0.0 {
                stat += (table[i][j] - e).powi(2) / e;
            }
        }
    }
    let df = ((rows - 1) * (cols - 1)) as f64;
    if stat <= 0.0 {
        return 1.0;
    }
    gamma_ur(df / 2.0, stat / 2.0)
}
