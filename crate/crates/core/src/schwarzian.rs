//! Pre-Schwarzian and Schwarzian series maps on normalised univalent
//! series, the half-form composition action and Schwarz-Christoffel series.

use nalgebra::{DMatrix, DVector};
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hankel::{OperatorKind, OperatorMatrix};
use crate::linalg::Mat;
use crate::loop_w::WBlockMatrix;
use crate::rng::RngStream;
use crate::scalar::{cint, cratio, Real};
use crate::series::PowerSeries;

/// `u(z) = z (1 + u_1 z + u_2 z^2 + ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivalentSeries<R: Real> {
    series: PowerSeries<R>,
}

impl<R: Real> UnivalentSeries<R> {
    /// From `[u_1, ..., u_N]`.
    pub fn from_tail(tail: &[Complex<R>]) -> Self {
        let mut c = vec![Complex::zero(), Complex::one()];
        c.extend(tail.iter().cloned());
        UnivalentSeries {
            series: PowerSeries::new(c),
        }
    }

    /// From a full series with `u(0) = 0`, `u'(0) = 1`.
    pub fn from_series(series: PowerSeries<R>) -> Result<Self> {
        if series.order() < 1 || !series.coeff(0).is_zero() || !series.coeff(1).is_one() {
            return Err(Error::InvalidParameter(
                "univalent series must be z + O(z^2)".into(),
            ));
        }
        Ok(UnivalentSeries { series })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_tail(&vec![Complex::zero(); n])
    }

    pub fn series(&self) -> &PowerSeries<R> {
        &self.series
    }

    /// Number `N` of stored tail coefficients `u_1..u_N`.
    pub fn len(&self) -> usize {
        self.series.order() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `u_n` (zero beyond the stored order).
    pub fn u(&self, n: usize) -> Complex<R> {
        if n + 1 <= self.series.order() {
            self.series.coeff(n + 1).clone()
        } else {
            Complex::zero()
        }
    }

    /// `u ∘ w`, valid to the smaller order.
    pub fn compose(&self, w: &Self) -> Self {
        UnivalentSeries {
            series: self.series.compose(&w.series).expect("w(0) = 0"),
        }
    }

    /// `t^{-1} u(t z)`, which scales `u_l` by `t^l`.
    pub fn rescale(&self, t: &Complex<R>) -> Self {
        let s = self.series.dilate(t).scale(&(Complex::<R>::one() / t.clone()));
        UnivalentSeries { series: s }
    }
}

/// `Q = Σ Q_{n+2} z^n (dz)^2`; coefficient `n` of the series is `Q_{n+2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadDifferential<R: Real> {
    pub coeffs: PowerSeries<R>,
}

impl<R: Real> QuadDifferential<R> {
    /// From `[Q_2, Q_3, ...]`.
    pub fn from_q(q: &[Complex<R>]) -> Self {
        QuadDifferential {
            coeffs: PowerSeries::new(q.to_vec()),
        }
    }

    /// `Q_n` for `n >= 2` (zero beyond the stored order).
    pub fn q(&self, n: usize) -> Complex<R> {
        assert!(n >= 2, "Q_n is indexed from n = 2");
        if n - 2 <= self.coeffs.order() {
            self.coeffs.coeff(n - 2).clone()
        } else {
            Complex::zero()
        }
    }

    /// Largest stored index `N` (coefficients `Q_2..Q_N`).
    pub fn top(&self) -> usize {
        self.coeffs.order() + 2
    }
}

/// `c(u) = log u'` and `N(u) = c(u)'`.
pub fn pre_schwarzian<R: Real>(u: &UnivalentSeries<R>) -> (PowerSeries<R>, PowerSeries<R>) {
    let c = u.series.deriv().log().expect("u'(0) = 1");
    let n = c.deriv();
    (c, n)
}

/// `S(u) = N(u)' - N(u)^2 / 2`.
pub fn schwarzian<R: Real>(u: &UnivalentSeries<R>) -> QuadDifferential<R> {
    let (_, n) = pre_schwarzian(u);
    let half = cratio::<R>(1, 2);
    let q = &n.deriv() - &(&n * &n).scale(&half);
    QuadDifferential { coeffs: q }
}

/// The unique `u` with `u_1 = 0` and `S(u) = Q` through `u_n`. The order-`k`
/// equation is `Q_k = (k+1) k (k-1) u_k + (terms in u_2..u_{k-1})`.
pub fn invert_schwarzian<R: Real>(q: &QuadDifferential<R>, n: usize) -> UnivalentSeries<R> {
    let mut tail = vec![Complex::zero(); n];
    for k in 2..=n {
        let u = UnivalentSeries::from_tail(&tail[..k]);
        let current = schwarzian(&u).q(k);
        let lin = cint::<R>(((k + 1) * k * (k - 1)) as i64);
        tail[k - 1] = (q.q(k) - current) / lin;
    }
    UnivalentSeries::from_tail(&tail)
}

/// Coefficient-wise residual of `c(f∘g) = c(f)∘g + c(g)` over valid orders.
pub fn cocycle_residual_c<R: Real>(f: &UnivalentSeries<R>, g: &UnivalentSeries<R>) -> f64 {
    let (cf, _) = pre_schwarzian(f);
    let (cg, _) = pre_schwarzian(g);
    let (cfg, _) = pre_schwarzian(&f.compose(g));
    let rhs = &cf.compose(&g.series).expect("g(0) = 0") + &cg;
    cfg.max_abs_diff(&rhs)
}

/// Residual of `N(f∘g) = N(f)∘g · g' + N(g)`.
pub fn cocycle_residual_n<R: Real>(f: &UnivalentSeries<R>, g: &UnivalentSeries<R>) -> f64 {
    let (_, nf) = pre_schwarzian(f);
    let (_, ng) = pre_schwarzian(g);
    let (_, nfg) = pre_schwarzian(&f.compose(g));
    let rhs = &(&nf.compose(&g.series).expect("g(0) = 0") * &g.series.deriv()) + &ng;
    nfg.max_abs_diff(&rhs)
}

/// Residual of `S(f∘g) = S(f)∘g · (g')^2 + S(g)`.
pub fn cocycle_residual_s<R: Real>(f: &UnivalentSeries<R>, g: &UnivalentSeries<R>) -> f64 {
    let sf = schwarzian(f).coeffs;
    let sg = schwarzian(g).coeffs;
    let sfg = schwarzian(&f.compose(g)).coeffs;
    let dg = g.series.deriv();
    let rhs = &(&(&sf.compose(&g.series).expect("g(0) = 0") * &dg) * &dg) + &sg;
    sfg.max_abs_diff(&rhs)
}

/// Row/column index of the basis vector `z^p (dz)^{1/2}` in the ordered
/// basis `z^{K-1}, ..., z^0, z^{-1}, ..., z^{-K}`.
pub fn halfform_index(band: usize, p: i64) -> usize {
    assert!(-(band as i64) <= p && p < band as i64, "power {p} outside the band");
    (band as i64 - 1 - p) as usize
}

/// Matrix of `f(z) (dz)^{1/2} -> f(u(z)) u'(z)^{1/2} (dz)^{1/2}` on the basis
/// `z^k (dz)^{1/2}`, `k = K-1, ..., -K`. The column of `z^k` holds the
/// coefficients of `u^k (u')^{1/2}`; the matrix is unipotent upper triangular
/// and entry `(i, j)` is homogeneous of degree `j - i` in the `u_l`.
pub fn halfform_action_matrix<R: Real>(u: &UnivalentSeries<R>, band: usize) -> OperatorMatrix<R> {
    let k = band as i64;
    let order = 2 * band;
    let ratio = u.series.pad_to(order + 1).shift_down(1);
    let inv = ratio.recip().expect("unit constant term");
    let sqrt_du = u
        .series
        .pad_to(order + 1)
        .deriv()
        .pow(&R::from_ratio(1, 2))
        .expect("u'(0) = 1");
    let dim = 2 * band;
    let mut m = Mat::zeros(dim, dim);
    let mut column = |power: i64, s: &PowerSeries<R>| {
        let col = &s.truncate(order) * &sqrt_du;
        let c = halfform_index(band, power);
        for p in power..k {
            m[(halfform_index(band, p), c)] = col.coeff((p - power) as usize).clone();
        }
    };
    let mut pos = PowerSeries::one(order);
    for power in 0..k {
        column(power, &pos);
        pos = &pos * &ratio;
    }
    let mut neg = inv.clone();
    for power in 1..=k {
        column(-power, &neg);
        neg = &neg * &inv;
    }
    OperatorMatrix {
        matrix: m,
        kind: OperatorKind::HalfFormAction,
    }
}

/// `W(u) = A^{-1} B` from the half-form action matrix: `A` acts on the
/// nonnegative powers, `B` maps the negative powers into them. Block
/// `(i, j)` of the result is the `z^{-j} -> z^i` entry.
pub fn w_of_u<R: Real>(u: &UnivalentSeries<R>, band: usize) -> Result<WBlockMatrix<R>> {
    let m = halfform_action_matrix(u, band).matrix;
    let a = Mat::from_fn(band, band, |r, c| {
        m[(halfform_index(band, r as i64), halfform_index(band, c as i64))].clone()
    });
    let b = Mat::from_fn(band, band, |r, c| {
        m[(halfform_index(band, r as i64), halfform_index(band, -(c as i64) - 1))].clone()
    });
    let w = a.solve(&b)?;
    WBlockMatrix::from_fn(1, band, band, |i, j| {
        Mat::from_row_major(1, 1, vec![w[(i, j - 1)].clone()])
    })
}

/// Linear coefficients of low-order `W(u)` entries as printed in the
/// homogeneous form of `W` in terms of `Q`: `(i, j, coefficient of Q_{i+j})`.
pub const W_DISPLAY_LINEAR: [(usize, usize, f64); 11] = [
    (0, 1, 0.0),
    (1, 1, 1.0 / 3.0),
    (0, 2, -1.0 / 3.0),
    (2, 1, -1.0 / 12.0),
    (1, 2, 0.0),
    (0, 3, 1.0 / 12.0),
    (3, 1, 1.0 / 12.0),
    (2, 2, -1.0 / 36.0),
    (1, 3, 1.0 / 36.0),
    (0, 4, -1.0 / 12.0),
    (2, 3, 0.0),
];

/// Entries carrying the unknown `Q_2^2` constants `c, c', c'', d`.
pub const W_CONSTANT_SLOTS: [(usize, usize); 4] = [(3, 1), (2, 2), (1, 3), (0, 4)];

/// Monomials `Q_{λ_1} ··· Q_{λ_r}` of weighted degree `n`, one per partition
/// of `n` into parts `>= 2`, listed with the linear monomial `Q_n` first.
pub fn q_monomials(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (2..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Least-squares fit of one `W(u)` entry as a polynomial in the `Q_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct WEntryFit {
    pub i: usize,
    pub j: usize,
    pub monomials: Vec<Vec<usize>>,
    pub coeffs: Vec<f64>,
    /// Coefficient of `Q_{i+j}` (zero when `i + j < 2`).
    pub linear: f64,
    /// Largest absolute residual over the samples.
    pub residual: f64,
}

/// Fits for every `(i, j)` of [`W_DISPLAY_LINEAR`] and the constants
/// `(c, c', c'', d)` read off the `Q_2^2` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WConstantsFit {
    pub entries: Vec<WEntryFit>,
    pub constants: [f64; 4],
}

impl WConstantsFit {
    pub fn entry(&self, i: usize, j: usize) -> Option<&WEntryFit> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    /// Largest deviation of the fitted linear coefficients from the display.
    pub fn display_linear_deviation(&self) -> f64 {
        W_DISPLAY_LINEAR
            .iter()
            .filter_map(|&(i, j, v)| self.entry(i, j).map(|e| (e.linear - v).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

/// Samples `nsamples` random `Q = (Q_2, ..., Q_5)`, computes `W(u)` for
/// `u = invert_schwarzian(Q)` and fits each low-order entry as a polynomial
/// in the `Q_k`. Coefficients are real in exact arithmetic; the real parts of
/// the complex least-squares solution are reported.
pub fn fit_w_constants(nsamples: usize, rng: &mut RngStream) -> Result<WConstantsFit> {
    const TOP: usize = 5;
    if nsamples < 8 {
        return Err(Error::InvalidParameter("need at least 8 samples".into()));
    }
    let mut qs = Vec::with_capacity(nsamples);
    let mut ws = Vec::with_capacity(nsamples);
    for _ in 0..nsamples {
        let q: Vec<Complex64> = (2..=TOP).map(|_| rng.complex_normal() * 0.5).collect();
        let u = invert_schwarzian(&QuadDifferential::from_q(&q), TOP);
        ws.push(w_of_u(&u, TOP)?);
        qs.push(q);
    }
    let qval = |q: &[Complex64], k: usize| q[k - 2];
    let mut entries = Vec::new();
    for &(i, j, _) in W_DISPLAY_LINEAR.iter() {
        let deg = i + j;
        let monomials = q_monomials(deg);
        let target = DVector::from_iterator(nsamples, ws.iter().map(|w| w.block(i, j)[(0, 0)]));
        let (coeffs, residual) = if monomials.is_empty() {
            (Vec::new(), target.iter().map(|z| z.norm()).fold(0.0, f64::max))
        } else {
            let design = DMatrix::from_fn(nsamples, monomials.len(), |s, c| {
                monomials[c]
                    .iter()
                    .fold(Complex64::one(), |acc, &k| acc * qval(&qs[s], k))
            });
            let sol = design
                .clone()
                .svd(true, true)
                .solve(&target, 1e-14)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            let res = (&design * &sol - &target).iter().map(|z| z.norm()).fold(0.0, f64::max);
            (sol.iter().map(|z| z.re).collect::<Vec<f64>>(), res)
        };
        let linear = monomials
            .iter()
            .position(|m| m.len() == 1)
            .map_or(0.0, |p| coeffs[p]);
        entries.push(WEntryFit {
            i,
            j,
            monomials,
            coeffs,
            linear,
            residual,
        });
    }
    let mut constants = [0.0; 4];
    for (slot, &(i, j)) in W_CONSTANT_SLOTS.iter().enumerate() {
        let e = entries.iter().find(|e| e.i == i && e.j == j).expect("slot listed");
        let p = e.monomials.iter().position(|m| m == &[2, 2]).expect("Q_2^2 monomial");
        constants[slot] = e.coeffs[p];
    }
    Ok(WConstantsFit { entries, constants })
}

/// Polygon data for the Schwarz-Christoffel series: prevertices `z_j` on the
/// unit circle with exterior parameters `β_j = 1 - α_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonSpec {
    pub vertices: Vec<Complex64>,
    pub betas: Vec<f64>,
    /// Prevertices `z'_j` of the exterior map; `None` reuses `vertices`.
    pub exterior: Option<Vec<Complex64>>,
}

impl PolygonSpec {
    pub fn new(vertices: Vec<Complex64>, betas: Vec<f64>) -> Result<Self> {
        if vertices.len() != betas.len() || vertices.is_empty() {
            return Err(Error::InvalidParameter("one β per vertex".into()));
        }
        for z in &vertices {
            if (z.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("vertex {z} not on the unit circle")));
            }
        }
        for b in &betas {
            if !(-1.0 < *b && *b < 1.0) {
                return Err(Error::InvalidParameter(format!("β = {b} outside (-1, 1)")));
            }
        }
        for (a, z) in vertices.iter().enumerate() {
            if vertices[..a].iter().any(|w| (w - z).norm() < 1e-12) {
                return Err(Error::CoincidentPoints);
            }
        }
        Ok(PolygonSpec {
            vertices,
            betas,
            exterior: None,
        })
    }

    /// Regular `n`-gon: `n`-th roots of unity with `β_j = 2/n`.
    pub fn regular(n: usize) -> Result<Self> {
        let v = (0..n)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect();
        Self::new(v, vec![2.0 / n as f64; n])
    }

    /// `Σ β_j - 2`, zero for a closed polygon.
    pub fn closure_defect(&self) -> f64 {
        self.betas.iter().sum::<f64>() - 2.0
    }
}

/// Series data of a Schwarz-Christoffel map.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzChristoffel {
    /// `du = ∏ (1 - z/z_j)^{-β_j}`.
    pub du: PowerSeries<f64>,
    /// `u = ∫_0^z du = z (1 + u_1 z + ...)`.
    pub u: PowerSeries<f64>,
    /// `dl^{-1} = ∏ (1 - z'_j/z)^{β_j} = Σ a_k z^{-k}`, stored as the `a_k`.
    pub dlinv: PowerSeries<f64>,
    /// Coefficient `a_1` of the `log z` term of `l^{-1}`.
    pub linv_log: Complex64,
    /// Head `[b_0, b_1, ...]` of `l^{-1} = z + b_0 + b_1 z^{-1} + ...`, with
    /// `b_0 = 0` and `b_k = -a_{k+1}/k`.
    pub linv: Vec<Complex64>,
}

pub fn schwarz_christoffel_series(poly: &PolygonSpec, n: usize) -> Result<SchwarzChristoffel> {
    let product = |points: &[Complex64], sign: f64| -> Result<PowerSeries<f64>> {
        let mut acc = PowerSeries::one(n);
        for (z, b) in points.iter().zip(&poly.betas) {
            let factor = PowerSeries::new(vec![Complex64::one(), -1.0 / z]).pad_to(n);
            acc = &acc * &factor.pow(&(sign * b))?;
        }
        Ok(acc)
    };
    let du = product(&poly.vertices, -1.0)?;
    let u = du.antideriv();
    let ext: Vec<Complex64> = match &poly.exterior {
        Some(e) if e.len() == poly.betas.len() => e.clone(),
        Some(_) => return Err(Error::InvalidParameter("one exterior prevertex per β".into())),
        None => poly.vertices.clone(),
    };
    // (1 - z'/z)^β in the variable w = 1/z
    let conj_ext: Vec<Complex64> = ext.iter().map(|z| 1.0 / z).collect();
    let dlinv = product(&conj_ext, 1.0)?;
    let linv_log = if n >= 1 { *dlinv.coeff(1) } else { Complex64::zero() };
    let mut linv = vec![Complex64::zero()];
    for k in 1..n {
        linv.push(-*dlinv.coeff(k + 1) / k as f64);
    }
    Ok(SchwarzChristoffel {
        du,
        u,
        dlinv,
        linv_log,
        linv,
    })
}
