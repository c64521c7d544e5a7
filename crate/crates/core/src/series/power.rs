use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cint, norm_sqr, Real};

/// Truncated power series `c_0 + c_1 z + ... + c_N z^N`.
///
/// The order `N` is the last coefficient index that is known to be correct.
/// Binary operations truncate to the smaller operand order; derivatives lose
/// one order and antiderivatives gain one.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<R: Real> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> PowerSeries<R> {
    /// Builds a series from coefficients; an empty vector becomes the zero
    /// series of order 0.
    pub fn new(mut coeffs: Vec<Complex<R>>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn from_real(coeffs: &[R]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Complex::new(c.clone(), R::zero()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Complex::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Complex::one(), order)
    }

    /// The coordinate `z` truncated at `order` (which must be at least 1).
    pub fn z(order: usize) -> Self {
        Self::monomial(1, Complex::one(), order.max(1))
    }

    pub fn monomial(k: usize, c: Complex<R>, order: usize) -> Self {
        let mut s = Self::zero(order.max(k));
        s.coeffs[k] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<R>> {
        self.coeffs
    }

    /// Coefficient of `z^k`. Panics beyond the valid order.
    pub fn coeff(&self, k: usize) -> &Complex<R> {
        assert!(k <= self.order(), "coefficient {k} beyond order {}", self.order());
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: Complex<R>) {
        self.coeffs[k] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot truncate upward");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Zero-pads to a higher order. Only meaningful for polynomials, whose
    /// omitted coefficients really are zero.
    pub fn pad_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < order + 1 {
            coeffs.resize(order + 1, Complex::zero());
        } else {
            coeffs.truncate(order + 1);
        }
        PowerSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the highest nonzero coefficient, if any.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn map<S: Real>(&self, f: impl Fn(&Complex<R>) -> Complex<S>) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplies by `z^k`, raising the order by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }
    }

    /// Divides by `z^k`, dropping the first `k` coefficients (order drops by `k`).
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(k <= self.order());
        PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Rescales `z -> t z`, i.e. coefficient `k` is multiplied by `t^k`.
    pub fn dilate(&self, t: &Complex<R>) -> Self {
        let mut p = Complex::<R>::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * p.clone());
            p = p * t.clone();
        }
        PowerSeries { coeffs }
    }

    pub fn eval(&self, z: &Complex<R>) -> Complex<R> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    /// Formal quotient `self / g`, valid to the smaller order.
    pub fn div(&self, g: &Self) -> Result<Self> {
        let g0 = g.coeffs[0].clone();
        if g0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let inv0 = Complex::<R>::one() / g0;
        let mut q: Vec<Complex<R>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc - g.coeffs[j].clone() * q[k - j].clone();
            }
            q.push(acc * inv0.clone());
        }
        Ok(PowerSeries { coeffs: q })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// Composition `self(g(z))`; requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `g_n = [z^{n-1}] (z/f)^n / n`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearTerm);
        }
        let h = self.shift_down(1).recip()?;
        let mut out = Self::zero(n);
        let mut pow = Self::one(n - 1);
        for k in 1..=n {
            pow = &pow * &h;
            out.coeffs[k] = pow.coeffs[k - 1].clone() / cint::<R>(k as i64);
        }
        Ok(out)
    }

    /// Formal derivative; the order drops by one.
    pub fn deriv(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        PowerSeries {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * cint::<R>(k as i64 + 1))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; the order rises by one.
    pub fn antideriv(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / cint::<R>(k as i64 + 1));
        }
        PowerSeries { coeffs }
    }

    fn check_unit_constant(&self) -> Result<()> {
        let d = self.coeffs[0].clone() - Complex::one();
        let ok = if R::is_exact() {
            d.is_zero()
        } else {
            norm_sqr(&d).to_f64() <= 1e-24
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ConstantTermNotOne)
        }
    }

    /// Principal logarithm `∫ f'/f` of a series with `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        self.check_unit_constant()?;
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let mut unit = self.clone();
        unit.coeffs[0] = Complex::one();
        Ok(self.deriv().div(&unit.truncate(self.order() - 1))?.antideriv())
    }

    /// `exp(f)`, via `n g_n = Σ k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        let e0 = R::exp_complex(&self.coeffs[0]).ok_or(Error::NotRepresentable("exp"))?;
        let n = self.order();
        let mut g: Vec<Complex<R>> = Vec::with_capacity(n + 1);
        g.push(e0);
        for m in 1..=n {
            let mut acc = Complex::<R>::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[k].clone() * cint::<R>(k as i64) * g[m - k].clone();
            }
            g.push(acc / cint::<R>(m as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `f^α = exp(α log f)` on the branch with value 1 at the origin.
    pub fn pow(&self, alpha: &R) -> Result<Self> {
        let l = self.log()?;
        l.scale(&Complex::new(alpha.clone(), R::zero())).exp()
    }

    /// Maximum coefficient distance over the shared order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| {
                norm_sqr(&(self.coeffs[k].clone() - other.coeffs[k].clone()))
                    .to_f64()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

impl<R: Real> Add for &PowerSeries<R> {
    type Output = PowerSeries<R>;

    fn add(self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        }
    }
}

impl<R: Real> Sub for &PowerSeries<R> {
    type Output = PowerSeries<R>;

    fn sub(self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
        }
    }
}

impl<R: Real> Neg for &PowerSeries<R> {
    type Output = PowerSeries<R>;

    fn neg(self) -> PowerSeries<R> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Cauchy product truncated to the smaller order.
impl<R: Real> Mul for &PowerSeries<R> {
    type Output = PowerSeries<R>;

    fn mul(self, rhs: &PowerSeries<R>) -> PowerSeries<R> {
        let n = self.order().min(rhs.order());
        let mut out = vec![Complex::<R>::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }
}
