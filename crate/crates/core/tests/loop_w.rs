use confmeasure::loop_w::{
    abelian_det_check, big_c_coeff, c_coeff, c_coeff_subset, compositions, factorization_w_invariance,
    first_taylor_coefficient, g_plus_ode, loop_density, nilpotent_reduce, solve_g_plus, w_entries_combinatorial,
    w_from_g, w_oracle, LoopDensityParams, MultiIndex,
};
use confmeasure::hankel::{det_invariant, hankel_classical};
use confmeasure::scalar::{cint, cratio, qc};
use confmeasure::{ExactSeries, Mat, MatrixSeries, PowerSeries, RngStream, Series};
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Deterministic 2x2 rational matrices with small, varied entries.
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
    MatrixSeries::new(coeffs).unwrap()
}

fn random_theta(rng: &mut RngStream, dim: usize, order: usize, scale: f64) -> MatrixSeries<f64> {
    let coeffs = (0..order)
        .map(|_| Mat::from_fn(dim, dim, |_, _| rng.complex_normal() * scale))
        .collect();
    MatrixSeries::new(coeffs).unwrap()
}

#[test]
fn compositions_are_all_distinct() {
    for n in 1..=10 {
        let all = compositions(n);
        assert_eq!(all.len(), 1 << (n - 1));
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|i| i.order() == n));
    }
    assert!(MultiIndex::new(vec![]).is_err());
    assert!(MultiIndex::new(vec![1, 0]).is_err());
}

#[test]
fn c_dual_formulas_agree_through_twelve() {
    for n in 1..=12 {
        for index in compositions(n) {
            assert_eq!(c_coeff::<BigRational>(&index), c_coeff_subset::<BigRational>(&index), "{index:?}");
        }
    }
}

#[test]
fn subset_bijection_through_ten() {
    for n in 1..=10 {
        let mut seen = std::collections::HashSet::new();
        for index in compositions(n) {
            let s = index.to_subset();
            assert!(s.iter().all(|&k| (1..n).contains(&k)));
            assert_eq!(MultiIndex::from_subset(n, &s).unwrap(), index);
            assert!(seen.insert(s));
        }
        assert_eq!(seen.len(), 1 << (n - 1));
    }
}

#[test]
fn c_sums_to_one() {
    // θ = 1/(1-z) has every θ_i = 1 and g_+ = 1/(1-z), so Σ_{|I|=n} c(I) = 1
    for n in 1..=10 {
        let s: BigRational = compositions(n).iter().map(c_coeff::<BigRational>).sum();
        assert_eq!(s, BigRational::one(), "n = {n}");
    }
}

#[test]
fn small_c_values() {
    let idx = MultiIndex::new(vec![1, 2, 3]).unwrap();
    assert_eq!(c_coeff::<BigRational>(&idx), q(1, 18));
    assert_eq!(idx.partial_sums(), vec![1, 3, 6]);
    for i in 0..5 {
        for j in 1..5 {
            assert_eq!(first_taylor_coefficient::<BigRational>(i, j), q(1, (i + j) as i64));
        }
    }
}

#[test]
fn g_plus_two_ways_exact() {
    let theta = exact_theta(6, 1);
    assert_eq!(solve_g_plus(&theta, 6), g_plus_ode(&theta, 6));
}

#[test]
fn g_plus_solves_the_ode() {
    // g' = g θ coefficientwise: (k+1) g_{k+1} = Σ g_{k-i} θ_{i+1}
    let mut rng = RngStream::new(31, 0);
    let theta = random_theta(&mut rng, 3, 5, 0.5);
    let g = g_plus_ode(&theta, 5);
    for k in 0..5 {
        let mut rhs = Mat::zeros(3, 3);
        for i in 0..=k {
            rhs = &rhs + &(g.coeff(k - i) * theta.coeff(i));
        }
        let d = g.coeff(k + 1).scale(&c((k + 1) as f64, 0.0));
        assert!(d.max_abs_diff(&rhs) < 1e-13);
    }
}

#[test]
fn display_entries() {
    let theta = exact_theta(4, 2);
    let t = |k: usize| theta.coeff(k - 1).clone();
    let half = cratio::<BigRational>(1, 2);
    let sixth = cratio::<BigRational>(1, 6);
    let w01 = w_entries_combinatorial(&theta, 0, 1, 4).unwrap();
    assert_eq!(w01, t(1));
    let w11 = w_entries_combinatorial(&theta, 1, 1, 4).unwrap();
    assert_eq!(w11, (&t(2) - &(&t(1) * &t(1))).scale(&half));
    let w02 = w_entries_combinatorial(&theta, 0, 2, 4).unwrap();
    assert_eq!(w02, (&t(2) + &(&t(1) * &t(1))).scale(&half));
    // W_{1,-2} = (1/6)(2θ_3 - [θ_1, θ_2] - 2θ_1^3)
    let comm = &(&t(1) * &t(2)) - &(&t(2) * &t(1));
    let cube = &(&t(1) * &t(1)) * &t(1);
    let two = cint::<BigRational>(2);
    let expected = (&(&t(3).scale(&two) - &comm) - &cube.scale(&two)).scale(&sixth);
    assert_eq!(w_entries_combinatorial(&theta, 1, 2, 4).unwrap(), expected);
    assert!(w_entries_combinatorial(&theta, 0, 0, 4).is_err());
    assert!(w_entries_combinatorial(&theta, 3, 2, 4).is_err());
}

#[test]
fn combinatorial_equals_oracle_exactly() {
    let n = 6;
    for salt in 0..3 {
        let theta = exact_theta(n, salt);
        let g = g_plus_ode(&theta, n);
        let oracle = w_oracle(&g, n, n, n).unwrap();
        // entries with i + j <= n only see g through order n
        let via_g = w_from_g(&g.pad_to(2 * n - 1), n, n).unwrap();
        for i in 0..n {
            for j in 1..=n - i {
                let comb = w_entries_combinatorial(&theta, i, j, n).unwrap();
                assert_eq!(&comb, oracle.block(i, j), "({i}, {j})");
                assert_eq!(&comb, via_g.block(i, j), "({i}, {j})");
            }
        }
    }
}

#[test]
fn big_c_vanishes_when_no_run_is_long_enough() {
    let idx = MultiIndex::new(vec![1, 1]).unwrap();
    assert!(big_c_coeff::<BigRational>(&idx, 3).is_zero());
}

#[test]
fn factorization_invariance_converges() {
    let gm: MatrixSeries<f64> = MatrixSeries::from_scalar(&Series::new(vec![c(1.0, 0.0), c(-0.2, 0.0)]));
    let x = Series::new(vec![c(0.0, 0.0), c(0.3, 0.1), c(-0.1, 0.2)]).pad_to(24);
    let gp = MatrixSeries::from_scalar(&x.exp().unwrap());
    let g0 = Mat::from_fn(1, 1, |_, _| c(1.5, -0.5));
    let res: Vec<f64> = [8, 16, 32, 64, 256]
        .iter()
        .map(|&k| factorization_w_invariance(&gm, &g0, &gp, k).unwrap())
        .collect();
    assert!(res.windows(2).all(|w| w[1] <= w[0] || w[1] < 1e-14), "{res:?}");
    assert!(res[4] < 1e-6, "{res:?}");
}

#[test]
fn factorization_invariance_matrix_valued() {
    let mut rng = RngStream::new(32, 0);
    let mut gm_coeffs = vec![Mat::identity(2)];
    gm_coeffs.push(Mat::from_fn(2, 2, |_, _| rng.complex_normal() * 0.1));
    let gm = MatrixSeries::new(gm_coeffs).unwrap();
    let theta = random_theta(&mut rng, 2, 3, 0.3);
    let gp = g_plus_ode(&theta, 30);
    let g0 = Mat::from_fn(2, 2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.2, 0.1) });
    assert!(factorization_w_invariance(&gm, &g0, &gp, 128).unwrap() < 1e-8);
}

#[test]
fn abelian_identity() {
    let x = Series::new(vec![c(0.0, 0.0), c(0.2, 0.0)]);
    let (det, closed) = abelian_det_check(&x, 200).unwrap();
    assert!((det / closed - 1.0).abs() < 1e-6);
    let x = Series::new(vec![c(0.0, 0.0), c(0.2, -0.1), c(0.1, 0.15), c(-0.2, 0.05)]);
    let (det, closed) = abelian_det_check(&x, 400).unwrap();
    assert!((det / closed - 1.0).abs() < 1e-4, "{det} vs {closed}");
    assert!(abelian_det_check(&Series::new(vec![c(0.1, 0.0)]), 4).is_err());
}

#[test]
fn nilpotent_reduction_exact() {
    for deg in 1..=4usize {
        let x: ExactSeries = PowerSeries::new(
            (0..=deg).map(|k| if k == 0 { cint(0) } else { qc((k as i64 - 3, 2), (1, k as i64)) }).collect(),
        );
        for n in deg..=deg + 2 {
            let r = nilpotent_reduce(&x, n).unwrap();
            assert!(r.matches_hankel && r.complement_zero, "deg {deg}, n {n}");
            assert_eq!(r.block, hankel_classical(&x, n).matrix);
        }
    }
    let bad: ExactSeries = PowerSeries::new(vec![cint(1), cint(1)]);
    assert!(nilpotent_reduce(&bad, 2).is_err());
}

#[test]
fn loop_density_special_cases() {
    let params = LoopDensityParams::su_defining(2, 1.0).unwrap();
    assert_eq!(params.exponent(), 5.0);
    assert!(LoopDensityParams::new(0, Rational64::one(), 0.0).is_err());
    assert!(LoopDensityParams::new(2, Rational64::new(1, 2), -1.0).is_err());
    assert_eq!(LoopDensityParams::new(3, Rational64::new(1, 2), 2.0).unwrap().exponent(), 16.0);

    let zero = MatrixSeries::zero(2, 4);
    assert!((loop_density(&zero, &params, 6).unwrap() - 1.0).abs() < 1e-15);

    // θ = g^{-1} g' for g = [[1, x], [0, 1]] is [[0, x'], [0, 0]]
    let x = Series::new(vec![c(0.0, 0.0), c(0.3, 0.1), c(-0.2, 0.25), c(0.1, 0.0)]);
    let dx = x.deriv();
    let theta = MatrixSeries::new(
        (0..=dx.order())
            .map(|k| {
                let mut m = Mat::zeros(2, 2);
                m[(0, 1)] = *dx.coeff(k);
                m
            })
            .collect(),
    )
    .unwrap();
    for n in [3, 5] {
        let expected = det_invariant(&hankel_classical(&x, n).matrix).powf(-params.exponent());
        let got = loop_density(&theta, &params, n).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn diagonal_loop_density_converges() {
    // diagonal θ splits into two abelian loops with x = ∫ θ
    let (a, b) = (Series::new(vec![c(0.3, 0.0), c(0.1, -0.2)]), Series::new(vec![c(-0.2, 0.1)]));
    let xa = a.antideriv();
    let xb = b.antideriv();
    let theta = MatrixSeries::new(
        (0..2)
            .map(|k| {
                let mut m = Mat::zeros(2, 2);
                m[(0, 0)] = if k <= a.order() { *a.coeff(k) } else { c(0.0, 0.0) };
                m[(1, 1)] = if k <= b.order() { *b.coeff(k) } else { c(0.0, 0.0) };
                m
            })
            .collect(),
    )
    .unwrap();
    let params = LoopDensityParams::su_defining(2, 0.0).unwrap();
    let energy: f64 = [xa, xb]
        .iter()
        .flat_map(|x| x.coeffs().iter().enumerate().map(|(n, v)| n as f64 * v.norm_sqr()).collect::<Vec<_>>())
        .sum();
    let limit = (-params.exponent() * energy).exp();
    let errs: Vec<f64> = [4, 8, 16, 32]
        .iter()
        .map(|&n| (loop_density(&theta, &params, n).unwrap() / limit - 1.0).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0] || w[1] < 1e-12), "{errs:?}");
    assert!(errs[3] < 1e-8, "{errs:?}");
}

proptest! {
    #[test]
    fn float_cross_oracle(seed in 0u64..1000) {
        let mut rng = RngStream::new(seed, 7);
        let n = 5;
        let theta = random_theta(&mut rng, 3, n, 0.4);
        let g = solve_g_plus(&theta, n);
        let oracle = w_oracle(&g, n, n, n).unwrap();
        for i in 0..n {
            for j in 1..=n - i {
                let comb = w_entries_combinatorial(&theta, i, j, n).unwrap();
                prop_assert!(comb.max_abs_diff(oracle.block(i, j)) < 1e-12);
            }
        }
    }
}
