use std::f64::consts::PI;

use confmeasure::invariant::{
    compose_polynomial, covariance_matrix, eval_representer, hyperbolic_area, inner_product, moebius_act,
    norm_weight, norm_weights, poincare_dist, sup_norm_quadratic, Differential, GroupElementTilde, KernelSpec,
};
use confmeasure::scalar::cratio;
use confmeasure::{PowerSeries, Series};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn element() -> impl Strategy<Value = GroupElementTilde> {
    (0.0f64..0.6, 0.0f64..(2.0 * PI), -3.0f64..3.0)
        .prop_map(|(r, t, phi)| GroupElementTilde::from_ratio(Complex64::from_polar(r, t), phi).unwrap())
}

fn poly(len: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| PowerSeries::new(v.into_iter().map(|(a, b)| c(a, b)).collect()))
}

#[test]
fn weight_closed_form() {
    // w_m(n) = n! Γ(2m)/Γ(2m+n); for m = 1, w = 1/(n+1)
    for n in 0..10 {
        let w = norm_weight::<BigRational>(&BigRational::from_integer(1.into()), n).unwrap();
        assert_eq!(w, cratio::<BigRational>(1, n as i64 + 1).re);
    }
    // m = 1/2 gives the Hardy norm
    let half = norm_weights(&0.5f64, 12).unwrap();
    assert!(half.iter().all(|&w| (w - 1.0).abs() < 1e-15));
    assert!(norm_weight(&0.0f64, 3).is_err());
}

#[test]
fn representer_evaluates() {
    let f = PowerSeries::new(vec![c(1.0, 0.5), c(-0.3, 0.2), c(0.7, 0.0), c(0.0, -0.4)]).pad_to(400);
    let z0 = c(0.3, -0.4);
    for m in [0.5, 1.0, 1.5, 2.0] {
        let rep = eval_representer(z0, m, 400).unwrap();
        let lhs = inner_product(&Differential::new(m, f.clone()), &rep).unwrap();
        assert!((lhs - f.eval(&z0)).norm() < 1e-10, "m = {m}");
    }
    // degree 0 represents x -> x(z0) - x(0)
    let rep = eval_representer(z0, 0.0, 400).unwrap();
    let lhs = inner_product(&Differential::new(0.0, f.clone()), &rep).unwrap();
    assert!((lhs - (f.eval(&z0) - f.coeff(0))).norm() < 1e-10);
    assert!(eval_representer(c(1.0, 0.0), 1.0, 4).is_err());
}

#[test]
fn covariance_is_hermitian_and_positive() {
    let points = vec![c(0.1, 0.2), c(-0.5, 0.3), c(0.0, -0.7), c(0.6, 0.6)];
    for degree in [0.0, 0.5, 1.0, 2.5] {
        let cov = covariance_matrix(&KernelSpec { points: points.clone(), degree }).unwrap();
        assert!(cov.max_abs_diff(&cov.adjoint()) < 1e-14);
        let eig = cov.hermitian_eigenvalues();
        assert!(eig.iter().all(|&e| e > 0.0), "degree {degree}: {eig:?}");
    }
    assert!(covariance_matrix(&KernelSpec { points: vec![c(1.2, 0.0)], degree: 1.0 }).is_err());
}

#[test]
fn covariance_matches_representer_inner_products() {
    let (z, w) = (c(0.2, -0.1), c(-0.4, 0.35));
    let m = 1.5;
    let cov = covariance_matrix(&KernelSpec { points: vec![z, w], degree: m }).unwrap();
    let ez = eval_representer(z, m, 300).unwrap();
    let ew = eval_representer(w, m, 300).unwrap();
    let k = (c(1.0, 0.0) - z.conj() * w).powf(-2.0 * m);
    assert!((cov[(0, 1)] - k).norm() < 1e-12);
    // <e_w, e_z> = conj(e_z(w)) = C_{10}
    let ip = inner_product(&ew, &ez).unwrap();
    assert!((ip - cov[(1, 0)]).norm() < 1e-10);
    assert!((ip - k.conj()).norm() < 1e-10);
}

#[test]
fn central_elements_and_identity() {
    let g = GroupElementTilde::from_ratio(c(0.3, 0.1), 0.7).unwrap();
    let id = GroupElementTilde::identity();
    assert!(g.mul(&id).max_abs_diff(&g) < 1e-15);
    assert!(GroupElementTilde::central(1).mul(&GroupElementTilde::central(1)).max_abs_diff(&GroupElementTilde::central(2)) < 1e-15);
    // the centre acts trivially on the disk
    let z = c(0.2, -0.5);
    assert!((GroupElementTilde::central(3).apply(z) - z).norm() < 1e-15);
    assert!(GroupElementTilde::new(c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)).is_err());
}

proptest! {
    #[test]
    fn group_law_associative(g in element(), h in element(), k in element()) {
        let lhs = g.mul(&h).mul(&k);
        let rhs = g.mul(&h.mul(&k));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn group_inverse(g in element()) {
        let id = GroupElementTilde::identity();
        prop_assert!(g.mul(&g.inverse()).max_abs_diff(&id) < 1e-12);
        prop_assert!(g.inverse().mul(&g).max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn apply_is_homomorphism(g in element(), h in element(), r in 0.0f64..0.95, t in 0.0f64..6.3) {
        let z = Complex64::from_polar(r, t);
        prop_assert!((g.mul(&h).apply(z) - g.apply(h.apply(z))).norm() < 1e-10);
        prop_assert!((g.apply_inverse(g.apply(z)) - z).norm() < 1e-10);
    }

    #[test]
    fn apply_preserves_distance(g in element(), a in 0.0f64..0.8, b in 0.0f64..0.8, t in 0.0f64..6.3) {
        let z = c(a, 0.0);
        let w = Complex64::from_polar(b, t);
        let d0 = poincare_dist(z, w).unwrap();
        let d1 = poincare_dist(g.apply(z), g.apply(w)).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-8 * (1.0 + d0));
    }

    #[test]
    fn action_composes(g in element(), h in element(), f in poly(4), m in prop::sample::select(vec![0.5, 1.0, 1.5, 2.0])) {
        let order = 160;
        let theta = Differential::new(m, f.pad_to(order));
        let two_step = moebius_act(&g, &moebius_act(&h, &theta, order), order);
        let one_step = moebius_act(&g.mul(&h), &theta, order);
        let scale = one_step.coeffs.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max);
        // two_step truncates an intermediate series; compare the low coefficients
        let low = 30;
        prop_assert!(two_step.coeffs.truncate(low).max_abs_diff(&one_step.coeffs.truncate(low)) < 1e-8 * scale);
    }

    #[test]
    fn action_preserves_norm(g in element(), f in poly(4), m in prop::sample::select(vec![1.0, 1.5, 2.0])) {
        let order = 400;
        let theta = Differential::new(m, f.pad_to(order));
        let moved = moebius_act(&g, &theta, order);
        let a = theta.norm_sqr().unwrap();
        let b = moved.norm_sqr().unwrap();
        prop_assert!((a - b).abs() < 1e-6 * a.max(1e-3), "{} vs {}", a, b);
    }
}

#[test]
fn polynomial_composition_with_constant_term() {
    // (1 + z)^2 at z -> 1 + z gives 4 + 4z + z^2
    let f = PowerSeries::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    let phi = PowerSeries::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let out = compose_polynomial(&f, &phi);
    assert!(out.max_abs_diff(&PowerSeries::new(vec![c(4.0, 0.0), c(4.0, 0.0), c(1.0, 0.0)])) < 1e-15);
}

#[test]
fn hyperbolic_area_by_quadrature() {
    for radius in [0.3, 1.0, 2.5] {
        // r = tanh d turns the area element into π sinh(2d) dd
        let q = quad(|d| PI * (2.0 * d).sinh(), 0.0, radius, 2000);
        assert!((q - hyperbolic_area(radius)).abs() < 1e-8 * q);
    }
}

fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    // composite Simpson
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn sup_norm_of_simple_quadratics() {
    // Q = c: sup (1-|z|^2)^2 |c| = |c| at the origin
    let q = PowerSeries::new(vec![c(1.5, 0.0)]);
    let s = sup_norm_quadratic(&q, 32);
    assert!((s.value - 1.5).abs() < 1e-9);
    assert!(s.inner_band && s.outer_band);
    // Q = 6 z: max of 6 r (1-r^2)^2 is at r = 1/sqrt(5)
    let q = PowerSeries::new(vec![c(0.0, 0.0), c(6.0, 0.0)]);
    let r: f64 = 1.0 / 5f64.sqrt();
    let exact = 6.0 * r * (1.0 - r * r).powi(2);
    assert!((sup_norm_quadratic(&q, 32).value - exact).abs() < 1e-6);
}
