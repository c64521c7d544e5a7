use confmeasure::scalar::{cint, cratio, qc};
use confmeasure::{ExactSeries, Mat, MatrixSeries, PowerSeries, Series};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small_series(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), len)
}

fn build(tail: &[(f64, f64)], c0: Complex64, c1: Option<Complex64>) -> Series {
    let mut v = vec![c0];
    if let Some(c1) = c1 {
        v.push(c1);
    }
    v.extend(tail.iter().map(|&(a, b)| c(a, b)));
    PowerSeries::new(v)
}

proptest! {
    #[test]
    fn reversion_roundtrip(tail in small_series(10), a in 0.5f64..2.0) {
        let f = build(&tail, c(0.0, 0.0), Some(c(a, 0.3)));
        let g = f.reversion().unwrap();
        let scale = g.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max).powi(2);
        let id = f.compose(&g).unwrap();
        prop_assert!(id.max_abs_diff(&PowerSeries::z(id.order())) < 1e-12 * scale);
        let id2 = g.compose(&f).unwrap();
        prop_assert!(id2.max_abs_diff(&PowerSeries::z(id2.order())) < 1e-12 * scale);
    }

    #[test]
    fn log_exp_inverse(tail in small_series(12)) {
        let f = build(&tail, c(1.0, 0.0), None);
        let back = f.log().unwrap().exp().unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn pow_is_multiplicative(tail in small_series(10), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let f = build(&tail, c(1.0, 0.0), None);
        let lhs = f.pow(&(a + b)).unwrap();
        let rhs = &f.pow(&a).unwrap() * &f.pow(&b).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-8);
    }

    #[test]
    fn div_then_mul(tail in small_series(9), other in small_series(9)) {
        let f = build(&tail, c(0.3, 0.1), None);
        let g = build(&other, c(1.0, -0.2), None);
        let q = f.div(&g).unwrap();
        prop_assert!((&q * &g).max_abs_diff(&f) < 1e-10);
    }
}

#[test]
fn integer_pow_matches_repeated_product() {
    let f: ExactSeries = PowerSeries::new(vec![cint(1), qc((1, 2), (1, 3)), qc((-2, 5), (0, 1)), cint(3)]).pad_to(8);
    let cube = f.pow(&BigRational::from_integer(3.into())).unwrap();
    let direct = &(&f * &f) * &f;
    assert_eq!(cube, direct);
}

#[test]
fn exact_composition_of_geometric_series() {
    // 1/(1-w) at w = z/(1-z) is (1-z)/(1-2z), coefficients 1, 1, 2, 4, 8, ...
    let n = 10;
    let geo: ExactSeries = PowerSeries::new(vec![cint(1); n + 1]);
    let inner = geo.shift_up(1).truncate(n);
    let comp = geo.compose(&inner).unwrap();
    let mut expected = vec![cint(1), cint(1)];
    for k in 2..=n {
        expected.push(cint(1 << (k - 1)));
    }
    assert_eq!(comp, PowerSeries::new(expected));
}

#[test]
fn exact_reversion_of_catalan_generator() {
    // z - z^2 reverses to Σ Catalan(k-1) z^k
    let n = 10;
    let f: ExactSeries = PowerSeries::new(vec![cint(0), cint(1), cint(-1)]).pad_to(n);
    let g = f.reversion().unwrap();
    let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for k in 1..=n {
        assert_eq!(*g.coeff(k), cint(catalan[k - 1]), "k = {k}");
    }
}

#[test]
fn exact_log_of_one_plus_z() {
    let f: ExactSeries = PowerSeries::new(vec![cint(1), cint(1)]).pad_to(8);
    let l = f.log().unwrap();
    for k in 1..=8i64 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        assert_eq!(*l.coeff(k as usize), cratio(sign, k));
    }
}

#[test]
fn constant_term_errors() {
    let f = Series::new(vec![c(2.0, 0.0), c(1.0, 0.0)]);
    assert!(f.log().is_err());
    assert!(f.reversion().is_err());
    let g = Series::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(g.reversion().is_err());
    assert!(f.div(&g).is_err());
}

#[test]
fn matrix_series_inverse_exact() {
    let m = |a: i64, b: i64, cc: i64, d: i64| {
        Mat::<BigRational>::from_row_major(2, 2, vec![cint(a), cint(b), cint(cc), cint(d)])
    };
    let g = MatrixSeries::new(vec![m(1, 0, 0, 1), m(1, 2, 0, -1), m(0, 1, 1, 0), m(3, 0, 1, 1)])
        .unwrap()
        .pad_to(7);
    let h = g.inverse().unwrap();
    let one = MatrixSeries::identity(2, 7);
    assert_eq!(&g * &h, one);
    assert_eq!(&h * &g, one);
}

#[test]
fn matrix_series_inverse_noncommuting_float() {
    let m = |v: [f64; 4]| Mat::<f64>::from_row_major(2, 2, v.iter().map(|&x| c(x, 0.5 * x)).collect());
    let g = MatrixSeries::unipotent(vec![m([0.1, 0.2, -0.3, 0.4]), m([0.5, -0.1, 0.2, 0.0])]).unwrap().pad_to(9);
    let h = g.inverse().unwrap();
    assert!((&g * &h).max_abs_diff(&MatrixSeries::identity(2, 9)) < 1e-13);
}
