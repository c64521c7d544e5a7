//! Invariant Hilbert structure on `m`-differentials, the universal cover of
//! `SU(1,1)`, its action on differentials and hyperbolic geometry.

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{conj, Real};
use crate::series::PowerSeries;

/// `f(z) (dz)^m` with `f` a truncated power series.
///
/// Degree `0` is read as the antiderivative space `H^0/C`, whose invariant
/// norm is the rescaled `m -> 0` limit `Σ k |x_k|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Differential<R: Real> {
    pub degree: R,
    pub coeffs: PowerSeries<R>,
}

impl<R: Real> Differential<R> {
    pub fn new(degree: R, coeffs: PowerSeries<R>) -> Self {
        Differential { degree, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    /// Invariant inner product `Σ f_n conj(g_n) w_m(n)`.
    pub fn inner(&self, other: &Self) -> Result<Complex<R>> {
        inner_product(self, other)
    }

    pub fn norm_sqr(&self) -> Result<R> {
        Ok(inner_product(self, self)?.re)
    }
}

/// `w_m(n) = n! / ((2m)(2m+1)...(2m+n-1))`, so that `Σ |f_n|^2 w_m(n)` is
/// the invariant norm on `H^m`.
pub fn norm_weight<R: Real>(m: &R, n: usize) -> Result<R> {
    if *m <= R::zero() {
        return Err(Error::InvalidParameter(format!(
            "norm weight needs m > 0, got {}",
            m.to_f64()
        )));
    }
    let two_m = m.clone() + m.clone();
    let mut w = R::one();
    for k in 0..n {
        let kr = R::from_int(k as i64);
        w = w * (kr.clone() + R::one()) / (two_m.clone() + kr);
    }
    Ok(w)
}

/// All weights `w_m(0..=n)` computed by the ratio `(k+1)/(2m+k)`.
pub fn norm_weights<R: Real>(m: &R, n: usize) -> Result<Vec<R>> {
    norm_weight(m, 0)?;
    let two_m = m.clone() + m.clone();
    let mut out = Vec::with_capacity(n + 1);
    let mut w = R::one();
    out.push(w.clone());
    for k in 0..n {
        let kr = R::from_int(k as i64);
        w = w * (kr.clone() + R::one()) / (two_m.clone() + kr);
        out.push(w.clone());
    }
    Ok(out)
}

/// Weight used by the inner product: `w_m(n)` for `m > 0`, and `n` for the
/// `m = 0` antiderivative convention.
fn inner_weights<R: Real>(m: &R, n: usize) -> Result<Vec<R>> {
    if m.is_zero() {
        Ok((0..=n).map(|k| R::from_int(k as i64)).collect())
    } else {
        norm_weights(m, n)
    }
}

pub fn inner_product<R: Real>(f: &Differential<R>, g: &Differential<R>) -> Result<Complex<R>> {
    if f.degree != g.degree {
        return Err(Error::DegreeMismatch(f.degree.to_f64(), g.degree.to_f64()));
    }
    if f.order() != g.order() {
        return Err(Error::OrderMismatch(f.order(), g.order()));
    }
    let w = inner_weights(&f.degree, f.order())?;
    let mut acc = Complex::<R>::zero();
    for (k, wk) in w.into_iter().enumerate() {
        let t = f.coeffs.coeff(k).clone() * conj(g.coeffs.coeff(k));
        acc = acc + t * Complex::new(wk, R::zero());
    }
    Ok(acc)
}

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() >= 1.0 {
        Err(Error::OutsideDisk(z.norm()))
    } else {
        Ok(())
    }
}

/// Representer of `f -> f(z0)`: the coefficients of `(1 - conj(z0) z)^{-2m}`.
/// For `m = 0` this is the antiderivative kernel with coefficients
/// `conj(z0)^k / k`, which represents `x -> x(z0) - x(0)`.
pub fn eval_representer(z0: Complex64, m: f64, order: usize) -> Result<Differential<f64>> {
    check_disk(z0)?;
    let zb = z0.conj();
    let mut c = vec![Complex64::zero(); order + 1];
    if m == 0.0 {
        let mut p = Complex64::one();
        for (k, ck) in c.iter_mut().enumerate().skip(1) {
            p *= zb;
            *ck = p / k as f64;
        }
    } else {
        norm_weight(&m, 0)?;
        c[0] = Complex64::one();
        for k in 0..order {
            c[k + 1] = c[k] * zb * ((2.0 * m + k as f64) / (k as f64 + 1.0));
        }
    }
    Ok(Differential::new(m, PowerSeries::new(c)))
}

/// Points and degree defining a finite family of evaluation functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub points: Vec<Complex64>,
    pub degree: f64,
}

/// `C_ij = <eval_{z_i}, eval_{z_j}> = (1 - conj(z_i) z_j)^{-2m}`; for degree
/// `0`, `C_ij = ln 1/(1 - conj(z_i) z_j)`.
pub fn covariance_matrix(spec: &KernelSpec) -> Result<Mat<f64>> {
    for z in &spec.points {
        check_disk(*z)?;
    }
    if spec.degree < 0.0 {
        return Err(Error::InvalidParameter("degree must be >= 0".into()));
    }
    let n = spec.points.len();
    Ok(Mat::from_fn(n, n, |i, j| {
        let w = Complex64::one() - spec.points[i].conj() * spec.points[j];
        if spec.degree == 0.0 {
            -w.ln()
        } else {
            (-2.0 * spec.degree * w.ln()).exp()
        }
    }))
}

/// Element `(a, b, A)` of the universal cover of `SU(1,1)`, with
/// `|a|^2 - |b|^2 = 1` and `e^A = a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElementTilde {
    pub a: Complex64,
    pub b: Complex64,
    pub big_a: Complex64,
}

impl GroupElementTilde {
    pub fn new(a: Complex64, b: Complex64, big_a: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if (det - 1.0).abs() > 1e-12 * a.norm_sqr().max(1.0) {
            return Err(Error::InvalidParameter(format!("|a|^2 - |b|^2 = {det}, expected 1")));
        }
        if (big_a.exp() - a).norm() > 1e-12 * a.norm() {
            return Err(Error::InvalidParameter("exp(A) != a".into()));
        }
        Ok(GroupElementTilde { a, b, big_a })
    }

    pub fn identity() -> Self {
        GroupElementTilde {
            a: Complex64::one(),
            b: Complex64::zero(),
            big_a: Complex64::zero(),
        }
    }

    /// Central element `n -> ((-1)^n, 0, iπn)`.
    pub fn central(n: i64) -> Self {
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        GroupElementTilde {
            a: Complex64::new(sign, 0.0),
            b: Complex64::zero(),
            big_a: Complex64::new(0.0, std::f64::consts::PI * n as f64),
        }
    }

    /// Lift of the disk automorphism with rotation angle `phi` (a = e^{iφ/2}
    /// before boosting) and `b/a = beta`, `|beta| < 1`, on the sheet through
    /// the principal logarithm.
    pub fn from_ratio(beta: Complex64, phi: f64) -> Result<Self> {
        check_disk(beta)?;
        let modulus = 1.0 / (1.0 - beta.norm_sqr()).sqrt();
        let a = Complex64::from_polar(modulus, phi);
        let b = beta * a;
        let big_a = Complex64::new(modulus.ln(), phi);
        Self::new(a, b, big_a)
    }

    /// Group law with the cocycle `A_3 = A_1 + A_2 + log(1 + b_1 conj(b_2)/(a_1 a_2))`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let a = self.a * rhs.a + self.b * rhs.b.conj();
        let b = self.a * rhs.b + self.b * rhs.a.conj();
        let big_a =
            self.big_a + rhs.big_a + (Complex64::one() + self.b * rhs.b.conj() / (self.a * rhs.a)).ln();
        GroupElementTilde { a, b, big_a }
    }

    pub fn inverse(&self) -> Self {
        GroupElementTilde {
            a: self.a.conj(),
            b: -self.b,
            big_a: self.big_a.conj(),
        }
    }

    /// The disk automorphism `z -> (a z + b)/(conj(b) z + conj(a))`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// Inverse map `z -> (conj(a) z - b)/(-conj(b) z + a)`.
    pub fn apply_inverse(&self, z: Complex64) -> Complex64 {
        (self.a.conj() * z - self.b) / (-self.b.conj() * z + self.a)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.big_a - other.big_a).norm())
    }
}

/// Action on `m`-differentials:
/// `f(z) -> f((conj(a) z - b)/(-conj(b) z + a)) e^{-2mA} (1 - (conj(b)/a) z)^{-2m}`.
///
/// `θ` is treated as a polynomial; the result is truncated at `order`.
pub fn moebius_act(
    g: &GroupElementTilde,
    theta: &Differential<f64>,
    order: usize,
) -> Differential<f64> {
    let m = theta.degree;
    let c = g.b.conj() / g.a;
    // 1/(a - conj(b) z) = (1/a) Σ c^k z^k
    let mut geo = vec![Complex64::zero(); order + 1];
    let mut p = Complex64::one() / g.a;
    for gk in geo.iter_mut() {
        *gk = p;
        p *= c;
    }
    let geo = PowerSeries::new(geo);
    let num = PowerSeries::new(vec![-g.b, g.a.conj()]).pad_to(order);
    let phi = &num * &geo;
    let composed = compose_polynomial(&theta.coeffs, &phi);

    // e^{-2mA} (1 - c z)^{-2m}, coefficient k = (2m)_k c^k / k!
    let mut factor = vec![Complex64::zero(); order + 1];
    factor[0] = (-2.0 * m * g.big_a).exp();
    for k in 0..order {
        factor[k + 1] = factor[k] * c * ((2.0 * m + k as f64) / (k as f64 + 1.0));
    }
    let out = &composed * &PowerSeries::new(factor);
    Differential::new(m, out)
}

/// `Σ f_k φ^k` by Horner's rule, treating `f` as a polynomial and keeping
/// the order of `φ`. Unlike [`PowerSeries::compose`], `φ(0)` may be nonzero.
pub fn compose_polynomial<R: Real>(f: &PowerSeries<R>, phi: &PowerSeries<R>) -> PowerSeries<R> {
    let n = phi.order();
    let deg = f.degree().unwrap_or(0);
    let mut acc = PowerSeries::zero(n);
    for k in (0..=deg).rev() {
        acc = &acc * phi;
        let c0 = acc.coeff(0).clone() + f.coeff(k).clone();
        acc.set_coeff(0, c0);
    }
    acc
}

/// Hyperbolic distance for the metric `|dz| / (1 - |z|^2)`:
/// `arctanh |(z - w)/(1 - conj(z) w)|`.
pub fn poincare_dist(z: Complex64, w: Complex64) -> Result<f64> {
    check_disk(z)?;
    check_disk(w)?;
    let r = ((z - w) / (Complex64::one() - z.conj() * w)).norm();
    Ok(r.min(1.0 - f64::EPSILON).atanh())
}

/// Area of the hyperbolic disk of radius `radius` for `dA = dx dy/(1-|z|^2)^2`.
pub fn hyperbolic_area(radius: f64) -> f64 {
    let s = radius.sinh();
    std::f64::consts::PI * s * s
}

/// Result of [`sup_norm_quadratic`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNorm {
    pub value: f64,
    pub argmax: Complex64,
    /// `value < 2`
    pub inner_band: bool,
    /// `value < 6`
    pub outer_band: bool,
}

/// Numerical `sup (1 - |z|^2)^2 |Q(z)|` over the disk: a polar grid of
/// `grid x 4 grid` points followed by local pattern-search refinement.
pub fn sup_norm_quadratic(q: &PowerSeries<f64>, grid: usize) -> SupNorm {
    let grid = grid.max(4);
    let objective = |z: Complex64| {
        let r2 = z.norm_sqr();
        if r2 >= 1.0 {
            0.0
        } else {
            (1.0 - r2).powi(2) * q.eval(&z).norm()
        }
    };
    let mut best = (objective(Complex64::zero()), Complex64::zero());
    let nang = 4 * grid;
    for i in 1..grid {
        let r = i as f64 / grid as f64;
        for j in 0..nang {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / nang as f64);
            let v = objective(z);
            if v > best.0 {
                best = (v, z);
            }
        }
    }
    let mut step = 1.0 / grid as f64;
    while step > 1e-12 {
        let mut improved = false;
        for d in [
            Complex64::new(step, 0.0),
            Complex64::new(-step, 0.0),
            Complex64::new(0.0, step),
            Complex64::new(0.0, -step),
        ] {
            let z = best.1 + d;
            let v = objective(z);
            if v > best.0 {
                best = (v, z);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    SupNorm {
        value: best.0,
        argmax: best.1,
        inner_band: best.0 < 2.0,
        outer_band: best.0 < 6.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn weight_examples() {
        assert_eq!(norm_weight(&1.0, 0).unwrap(), 1.0);
        assert_eq!(norm_weight(&1.0, 1).unwrap(), 0.5);
        let half = BigRational::from_ratio(1, 2);
        for n in 0..=50 {
            assert_eq!(norm_weight(&half, n).unwrap(), BigRational::one());
        }
        assert!(norm_weight(&0.0, 3).is_err());
    }

    #[test]
    fn antiderivative_norm() {
        let x = Differential::new(0.0, PowerSeries::from_real(&[0.0, 1.0, 1.0]));
        assert_eq!(x.norm_sqr().unwrap(), 3.0);
    }

    #[test]
    fn representer_at_origin() {
        let k = eval_representer(Complex64::zero(), 1.5, 4).unwrap();
        assert_eq!(k.coeffs, PowerSeries::one(4));
        assert!(eval_representer(Complex64::new(1.0, 0.0), 1.0, 4).is_err());
    }

    #[test]
    fn two_point_covariance() {
        let spec = KernelSpec {
            points: vec![Complex64::new(0.5, 0.0), Complex64::zero()],
            degree: 1.0,
        };
        let c = covariance_matrix(&spec).unwrap();
        assert!((c[(0, 0)].re - 0.75f64.powi(-2)).abs() < 1e-14);
        assert!((c[(0, 1)] - Complex64::one()).norm() < 1e-15);
    }

    #[test]
    fn central_elements_add() {
        let g = GroupElementTilde::central(2).mul(&GroupElementTilde::central(3));
        assert!(g.max_abs_diff(&GroupElementTilde::central(5)) < 1e-15);
    }

    #[test]
    fn constant_quadratic_sup() {
        let q = PowerSeries::new(vec![Complex64::new(0.3, -0.4)]);
        let s = sup_norm_quadratic(&q, 16);
        assert!((s.value - 0.5).abs() < 1e-14);
        assert!(s.inner_band);
    }
}
