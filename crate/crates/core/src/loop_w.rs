//! Loop-group combinatorics: multi-indices, iterated-integral coefficients
//! and the graph operator `W = A^{-1} B` of a based holomorphic loop.
//!
//! Conventions. A symbol `θ_+ = (θ_1 + θ_2 z + ...) dz` is stored as a
//! [`MatrixSeries`] whose coefficient `k` is `θ_{k+1}`. The loop
//! `g_+ = 1 + g_1 z + ...` solves `g_+' = g_+ θ`. The block `W_{i,-j}`
//! (`i >= 0`, `j >= 1`) is the component of `A(g_+)^{-1} B(g_+)` taking the
//! basis vector `z^{-j}` to `z^i`.

use num_complex::{Complex, Complex64};
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hankel::hankel_classical;
use crate::linalg::Mat;
use crate::scalar::Real;
use crate::series::{MatrixSeries, PowerSeries};

/// Positive multi-index `(i_1, ..., i_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    parts: Vec<usize>,
}

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter(
                "multi-index parts must be positive and nonempty".into(),
            ));
        }
        Ok(MultiIndex { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i_1 + ... + i_l`.
    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Partial sums `λ_1 < ... < λ_l = n`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// The subset `S = {1..n} \ {λ_1, ..., λ_l}` of `{1, ..., n-1}`.
    pub fn to_subset(&self) -> Vec<usize> {
        let lambdas = self.partial_sums();
        (1..=self.order()).filter(|k| !lambdas.contains(k)).collect()
    }

    /// Inverse of [`MultiIndex::to_subset`]: parts are `1 + |S_j|` over the
    /// runs of consecutive integers in `S`, with singleton parts between.
    pub fn from_subset(n: usize, subset: &[usize]) -> Result<Self> {
        if n == 0 || subset.iter().any(|&s| s == 0 || s >= n) {
            return Err(Error::InvalidParameter(format!(
                "subset must lie in {{1, ..., {}}}",
                n.saturating_sub(1)
            )));
        }
        let mut parts = Vec::new();
        let mut run = 0;
        for k in 1..=n {
            if subset.contains(&k) {
                run += 1;
            } else {
                parts.push(run + 1);
                run = 0;
            }
        }
        Self::new(parts)
    }
}

/// All positive multi-indices of order `n` (the `2^{n-1}` compositions).
pub fn compositions(n: usize) -> Vec<MultiIndex> {
    if n == 0 {
        return Vec::new();
    }
    (0..1u64 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for b in 0..n - 1 {
                if mask >> b & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            MultiIndex { parts }
        })
        .collect()
}

/// `c(I) = 1/i_1 · 1/(i_1+i_2) ··· 1/(i_1+...+i_l)`.
pub fn c_coeff<R: Real>(index: &MultiIndex) -> R {
    index
        .partial_sums()
        .into_iter()
        .fold(R::one(), |acc, s| acc * R::from_ratio(1, s as i64))
}

/// `c(I) = (∏_{s ∈ S} s) / n!` in terms of the complementary subset.
pub fn c_coeff_subset<R: Real>(index: &MultiIndex) -> R {
    let numer = index
        .to_subset()
        .into_iter()
        .fold(R::one(), |acc, s| acc * R::from_int(s as i64));
    (1..=index.order()).fold(numer, |acc, k| acc * R::from_ratio(1, k as i64))
}

/// Splittings of `index` into consecutive nonempty runs `(I_1, ..., I_l)`.
fn splittings(index: &MultiIndex) -> Vec<Vec<MultiIndex>> {
    let len = index.len();
    (0..1u64 << (len - 1))
        .map(|mask| {
            let mut runs = Vec::new();
            let mut start = 0;
            for b in 0..len {
                if b == len - 1 || mask >> b & 1 == 1 {
                    runs.push(MultiIndex {
                        parts: index.parts[start..=b].to_vec(),
                    });
                    start = b + 1;
                }
            }
            runs
        })
        .collect()
}

/// `C(I) = Σ (-1)^{l+1} c(I_1) ··· c(I_l)` over splittings with `|I_l| >= j`.
pub fn big_c_coeff<R: Real>(index: &MultiIndex, j: usize) -> R {
    splittings(index)
        .into_iter()
        .filter(|runs| runs.last().is_some_and(|r| r.order() >= j))
        .fold(R::zero(), |acc, runs| {
            let term = runs.iter().fold(R::one(), |p, r| p * c_coeff::<R>(r));
            if runs.len() % 2 == 1 {
                acc + term
            } else {
                acc - term
            }
        })
}

/// `θ_k` (1-based), zero beyond the stored order.
fn theta_k<R: Real>(theta: &MatrixSeries<R>, k: usize) -> Mat<R> {
    if k >= 1 && k - 1 <= theta.order() {
        theta.coeff(k - 1).clone()
    } else {
        Mat::zeros(theta.dim(), theta.dim())
    }
}

/// Ordered product `θ_{i_1} ··· θ_{i_l}`.
fn theta_word<R: Real>(theta: &MatrixSeries<R>, index: &MultiIndex) -> Mat<R> {
    index
        .parts
        .iter()
        .fold(Mat::identity(theta.dim()), |acc, &k| &acc * &theta_k(theta, k))
}

fn real_scale<R: Real>(m: &Mat<R>, r: R) -> Mat<R> {
    m.scale(&Complex::new(r, R::zero()))
}

/// `g_+` through order `n` from `g_n = Σ_{|I| = n} c(I) θ_I`.
pub fn solve_g_plus<R: Real>(theta: &MatrixSeries<R>, n: usize) -> MatrixSeries<R> {
    let d = theta.dim();
    let mut coeffs = vec![Mat::identity(d)];
    for k in 1..=n {
        let mut acc = Mat::zeros(d, d);
        for index in compositions(k) {
            acc = &acc + &real_scale(&theta_word(theta, &index), c_coeff(&index));
        }
        coeffs.push(acc);
    }
    MatrixSeries::new(coeffs).expect("square coefficients")
}

/// `g_+` through order `n` by the recursion `k g_k = Σ_{i=1}^k g_{k-i} θ_i`,
/// i.e. `g^{(n)} = ∫ g^{(n-1)} θ` collected by degree.
pub fn g_plus_ode<R: Real>(theta: &MatrixSeries<R>, n: usize) -> MatrixSeries<R> {
    let d = theta.dim();
    let mut g = vec![Mat::identity(d)];
    for k in 1..=n {
        let mut acc = Mat::zeros(d, d);
        for i in 1..=k.min(theta.order() + 1) {
            acc = &acc + &(&g[k - i] * theta.coeff(i - 1));
        }
        g.push(real_scale(&acc, R::from_ratio(1, k as i64)));
    }
    MatrixSeries::new(g).expect("square coefficients")
}

/// Block matrix `(W_{i,-j})`, `0 <= i < nrows`, `1 <= j <= ncols`.
#[derive(Clone, Debug, PartialEq)]
pub struct WBlockMatrix<R: Real> {
    dim: usize,
    nrows: usize,
    ncols: usize,
    blocks: Vec<Mat<R>>,
}

impl<R: Real> WBlockMatrix<R> {
    pub fn from_fn(
        dim: usize,
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Mat<R>,
    ) -> Result<Self> {
        let mut blocks = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 1..=ncols {
                let b = f(i, j);
                if b.rows() != dim || b.cols() != dim {
                    return Err(Error::InvalidParameter("inconsistent block dimension".into()));
                }
                blocks.push(b);
            }
        }
        Ok(WBlockMatrix {
            dim,
            nrows,
            ncols,
            blocks,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Block `W_{i,-j}`.
    pub fn block(&self, i: usize, j: usize) -> &Mat<R> {
        assert!(i < self.nrows && (1..=self.ncols).contains(&j));
        &self.blocks[i * self.ncols + j - 1]
    }

    /// Flattened matrix: scalar row `i d + a`, column `(j-1) d + b`.
    pub fn to_matrix(&self) -> Mat<R> {
        let d = self.dim;
        Mat::from_fn(self.nrows * d, self.ncols * d, |r, c| {
            self.block(r / d, c / d + 1)[(r % d, c % d)].clone()
        })
    }

    /// Largest entry difference over the shared blocks.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.nrows.min(other.nrows) {
            for j in 1..=self.ncols.min(other.ncols) {
                worst = worst.max(self.block(i, j).max_abs_diff(other.block(i, j)));
            }
        }
        worst
    }
}

/// `W_{i,-j} = Σ_{|I| = i+j} C(I) θ_{i_1} ··· θ_{i_l}`; needs `i + j <= n`
/// with `n` the order up to which `θ` is meaningful.
pub fn w_entries_combinatorial<R: Real>(
    theta: &MatrixSeries<R>,
    i: usize,
    j: usize,
    n: usize,
) -> Result<Mat<R>> {
    if j == 0 || i + j > n {
        return Err(Error::InvalidParameter(format!(
            "need j >= 1 and i + j <= {n}, got ({i}, {j})"
        )));
    }
    let d = theta.dim();
    let mut acc = Mat::zeros(d, d);
    for index in compositions(i + j) {
        let c: R = big_c_coeff(&index, j);
        if !c.is_zero() {
            acc = &acc + &real_scale(&theta_word(theta, &index), c);
        }
    }
    Ok(acc)
}

/// `W_{i,-j} = Σ_{k=0}^{i} (g^{-1})_k g_{i+j-k}` directly from the Taylor
/// coefficients of `g_+` (needs order at least `nrows + ncols - 1`).
pub fn w_from_g<R: Real>(g_plus: &MatrixSeries<R>, nrows: usize, ncols: usize) -> Result<WBlockMatrix<R>> {
    let need = nrows + ncols - 1;
    if g_plus.order() < need {
        return Err(Error::OrderMismatch(g_plus.order(), need));
    }
    let g = g_plus.truncate(need);
    let h = g.inverse()?;
    WBlockMatrix::from_fn(g.dim(), nrows, ncols, |i, j| {
        (0..=i).fold(Mat::zeros(g.dim(), g.dim()), |acc, k| {
            &acc + &(h.coeff(k) * g.coeff(i + j - k))
        })
    })
}

/// `W` of a Laurent loop from the finite section of its multiplication
/// operator on `z^k (dz)^{1/2}`, `-K <= k < K`: `A^{-1} B` with `A` the
/// `k >= 0` corner and `B` the block mapping `k < 0` into `k >= 0`.
fn w_finite_section<R: Real>(
    coeff: impl Fn(i64) -> Mat<R>,
    dim: usize,
    nrows: usize,
    ncols: usize,
    ntrunc: usize,
) -> Result<WBlockMatrix<R>> {
    if ntrunc < nrows.max(ncols) {
        return Err(Error::InvalidParameter(format!(
            "truncation {ntrunc} smaller than the requested {nrows}x{ncols} window"
        )));
    }
    let k = ntrunc;
    let d = dim;
    let mut a = Mat::zeros(k * d, k * d);
    let mut b = Mat::zeros(k * d, ncols * d);
    for p in 0..k {
        for q in 0..k {
            let blk = coeff(p as i64 - q as i64);
            for (r, c) in (0..d).flat_map(|r| (0..d).map(move |c| (r, c))) {
                a[(p * d + r, q * d + c)] = blk[(r, c)].clone();
            }
        }
        for j in 1..=ncols {
            let blk = coeff(p as i64 + j as i64);
            for (r, c) in (0..d).flat_map(|r| (0..d).map(move |c| (r, c))) {
                b[(p * d + r, (j - 1) * d + c)] = blk[(r, c)].clone();
            }
        }
    }
    let w = a.solve(&b)?;
    WBlockMatrix::from_fn(d, nrows, ncols, |i, j| {
        Mat::from_fn(d, d, |r, c| w[(i * d + r, (j - 1) * d + c)].clone())
    })
}

/// Oracle for `W(g_+)` from truncated Toeplitz and Hankel blocks of the
/// multiplication operator by `g_+` (coefficients past its order are zero).
pub fn w_oracle<R: Real>(
    g_plus: &MatrixSeries<R>,
    nrows: usize,
    ncols: usize,
    ntrunc: usize,
) -> Result<WBlockMatrix<R>> {
    let d = g_plus.dim();
    let coeff = |n: i64| {
        if n >= 0 && n as usize <= g_plus.order() {
            g_plus.coeff(n as usize).clone()
        } else {
            Mat::zeros(d, d)
        }
    };
    w_finite_section(coeff, d, nrows, ncols, ntrunc)
}

/// Side of the block window compared by [`factorization_w_invariance`].
pub const INVARIANCE_WINDOW: usize = 4;

/// Builds `g = g_- g_0 g_+` (with `g_-` a polynomial in `z^{-1}`, stored by
/// powers of `z^{-1}`, value 1 at infinity), computes `W(g)` from the finite
/// section of size `ntrunc` and returns the largest deviation from `W(g_+)`
/// on the leading `INVARIANCE_WINDOW` square of blocks.
pub fn factorization_w_invariance<R: Real>(
    g_minus: &MatrixSeries<R>,
    g_0: &Mat<R>,
    g_plus: &MatrixSeries<R>,
    ntrunc: usize,
) -> Result<f64> {
    let d = g_plus.dim();
    if g_minus.dim() != d || g_0.rows() != d || g_0.cols() != d {
        return Err(Error::InvalidParameter("factor dimensions differ".into()));
    }
    let one = Mat::identity(d);
    if g_plus.coeff(0) != &one || g_minus.coeff(0) != &one {
        return Err(Error::InvalidParameter("g_- and g_+ must be normalised to 1".into()));
    }
    let g0_plus: Vec<Mat<R>> = g_plus.coeffs().iter().map(|c| g_0 * c).collect();
    let (nm, np) = (g_minus.order() as i64, g_plus.order() as i64);
    let coeff = |n: i64| {
        let mut acc = Mat::zeros(d, d);
        for a in 0..=nm {
            let b = n + a;
            if (0..=np).contains(&b) {
                acc = &acc + &(g_minus.coeff(a as usize) * &g0_plus[b as usize]);
            }
        }
        acc
    };
    let w = INVARIANCE_WINDOW;
    let full = w_finite_section(coeff, d, w, w, ntrunc)?;
    let reference = w_from_g(&g_plus.pad_to(2 * w), w, w)?;
    Ok(full.max_abs_diff(&reference))
}

/// `det(1 + W W*)` of the scalar loop `g_+ = exp(x)` truncated to
/// `ntrunc x ntrunc`, together with the limit `exp(Σ n |x_n|^2)`.
pub fn abelian_det_check(x: &PowerSeries<f64>, ntrunc: usize) -> Result<(f64, f64)> {
    if x.coeff(0).norm() != 0.0 {
        return Err(Error::NonzeroConstantTerm);
    }
    let k = ntrunc;
    let g = x.pad_to(2 * k).exp()?;
    let h = g.recip()?;
    let (g, h) = (g.coeffs(), h.coeffs());
    let w = Mat::from_fn(k, k, |i, jm| {
        let j = jm + 1;
        (0..=i).fold(Complex64::zero(), |acc, t| acc + h[t] * g[i + j - t])
    });
    let det = w.log_det_one_plus_gram().exp();
    let closed = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| n as f64 * c.norm_sqr())
        .sum::<f64>()
        .exp();
    Ok((det, closed))
}

/// Outcome of the nilpotent reduction test.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentReport<R: Real> {
    /// Entries `(1,2)` of the blocks `W_{i,-j}`, `i < n`, `1 <= j <= n`.
    pub block: Mat<R>,
    pub matches_hankel: bool,
    pub complement_zero: bool,
    pub max_deviation: f64,
}

/// `W(g_+)` for `g_+ = [[1, x], [0, 1]]` computed by [`w_oracle`], compared
/// with the classical Hankel matrix of `x` (all other entries must vanish).
pub fn nilpotent_reduce<R: Real>(x: &PowerSeries<R>, n: usize) -> Result<NilpotentReport<R>> {
    if !x.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let xs = x.pad_to(2 * n);
    let coeffs = (0..=2 * n)
        .map(|k| {
            let mut m = Mat::zeros(2, 2);
            if k == 0 {
                m = Mat::identity(2);
            } else {
                m[(0, 1)] = xs.coeff(k).clone();
            }
            m
        })
        .collect();
    let g = MatrixSeries::new(coeffs)?;
    let w = w_oracle(&g, n, n, n)?;
    let block = Mat::from_fn(n, n, |i, j| w.block(i, j + 1)[(0, 1)].clone());
    let hankel = hankel_classical(&xs, n).matrix;
    let max_deviation = block.max_abs_diff(&hankel);
    let mut complement_zero = true;
    for i in 0..n {
        for j in 1..=n {
            let b = w.block(i, j);
            for (r, c) in [(0, 0), (1, 0), (1, 1)] {
                complement_zero &= b[(r, c)].is_zero();
            }
        }
    }
    let matches_hankel = if R::is_exact() {
        block == hankel
    } else {
        max_deviation < 1e-12
    };
    Ok(NilpotentReport {
        block,
        matches_hankel,
        complement_zero,
        max_deviation,
    })
}

/// Parameters of the loop density `det(1 + W W*)^{-(2ǧ + l)/m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopDensityParams {
    dual_coxeter: u32,
    trace_scale: Rational64,
    l: f64,
}

impl LoopDensityParams {
    pub fn new(dual_coxeter: u32, trace_scale: Rational64, l: f64) -> Result<Self> {
        if dual_coxeter < 1 || trace_scale <= Rational64::zero() || !(l >= 0.0) {
            return Err(Error::InvalidParameter(
                "need ǧ >= 1, m > 0 and l >= 0".into(),
            ));
        }
        Ok(LoopDensityParams {
            dual_coxeter,
            trace_scale,
            l,
        })
    }

    /// `SU(n)` in its defining representation: `ǧ = n`, `m = 1`.
    pub fn su_defining(n: u32, l: f64) -> Result<Self> {
        Self::new(n, Rational64::one(), l)
    }

    pub fn exponent(&self) -> f64 {
        let m = self.trace_scale.to_f64().expect("finite ratio");
        (2.0 * self.dual_coxeter as f64 + self.l) / m
    }
}

/// Unnormalised density `det(1 + W(θ_+) W(θ_+)^*)^{-(2ǧ+l)/m}` with `W`
/// truncated to `ntrunc x ntrunc` blocks.
pub fn loop_density(theta: &MatrixSeries<f64>, params: &LoopDensityParams, ntrunc: usize) -> Result<f64> {
    let g = g_plus_ode(theta, 2 * ntrunc);
    let w = w_from_g(&g, ntrunc, ntrunc)?.to_matrix();
    Ok((-params.exponent() * w.log_det_one_plus_gram()).exp())
}

/// Leading coefficient check: the part of `W_{i,-j}` linear in `θ_{i+j}` is
/// `θ_{i+j} / (i+j)`.
pub fn first_taylor_coefficient<R: Real>(i: usize, j: usize) -> R {
    let single = MultiIndex::new(vec![i + j]).expect("positive order");
    big_c_coeff(&single, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn compositions_count() {
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn small_c_values() {
        let q = |p: Vec<usize>| c_coeff::<BigRational>(&MultiIndex::new(p).unwrap());
        assert_eq!(q(vec![3]), BigRational::from_ratio(1, 3));
        assert_eq!(q(vec![2, 1]), BigRational::from_ratio(1, 6));
        assert_eq!(q(vec![1, 1, 1, 1]), BigRational::from_ratio(1, 24));
    }
}
