//! Partition counts and character computations for discrete series
//! representations `H^s` of `SU(1,1)`.
//!
//! All arithmetic is exact. Half-integer weights are stored doubled: the
//! doubled weight `2s` of `H^{1/2}` is `1`.

use crate::error::{Error, Result};

/// A partition stored with weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_k(λ)`, the number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

/// Every partition of `n`, by recursive enumeration.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Table `t[w][l]` of partitions of `w` into exactly `l` parts, each at
/// least `min_part`, for `w <= weight`, `l <= len`.
fn length_table(weight: usize, len: usize, min_part: usize) -> Vec<Vec<u64>> {
    // exactly l parts >= 1: t(w, l) = t(w-1, l-1) + t(w-l, l)
    let mut t = vec![vec![0u64; len + 1]; weight + 1];
    t[0][0] = 1;
    for w in 1..=weight {
        for l in 1..=len.min(w) {
            t[w][l] = t[w - 1][l - 1] + if w >= l { t[w - l][l] } else { 0 };
        }
    }
    if min_part <= 1 {
        return t;
    }
    // parts >= m: subtract m-1 from every part
    let shift = min_part - 1;
    let mut s = vec![vec![0u64; len + 1]; weight + 1];
    for (w, row) in s.iter_mut().enumerate() {
        for (l, v) in row.iter_mut().enumerate() {
            if w >= shift * l {
                *v = t[w - shift * l][l];
            }
        }
    }
    s
}

/// `p_n(N)`: partitions of `N` of length exactly `n`.
pub fn count_partitions_length(weight: usize, n: usize) -> u64 {
    length_table(weight, n, 1)[weight][n]
}

/// Partitions of `N` of length `n` with no part equal to 1.
pub fn count_partitions_length_no_ones(weight: usize, n: usize) -> u64 {
    length_table(weight, n, 2)[weight][n]
}

/// Representation whose symmetric powers are decomposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymSource {
    H1,
    H2,
}

/// Multiplicity of `H^N` in `S^n(source)` for `N = 0..=nmax`: the first
/// difference in `N` of the length-`n` partition counts (restricted to
/// `m_1(λ) = 0` for `H^2`).
pub fn sym_power_multiplicities(n: usize, source: SymSource, nmax: usize) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric power needs n >= 1".into()));
    }
    let min_part = match source {
        SymSource::H1 => 1,
        SymSource::H2 => 2,
    };
    let t = length_table(nmax, n, min_part);
    Ok((0..=nmax)
        .map(|w| {
            let here = t[w][n] as i64;
            let below = if w > 0 { t[w - 1][n] as i64 } else { 0 };
            here - below
        })
        .collect())
}

/// Formal series `q^{offset/2} Σ_k c_k q^k` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub offset_doubled: i64,
    pub coeffs: Vec<i64>,
}

impl CharacterSeries {
    /// Character `q^s/(1-q)` of `H^s` (with `2s = s_doubled`), `len` terms.
    pub fn discrete_series(s_doubled: i64, len: usize) -> Self {
        CharacterSeries {
            offset_doubled: s_doubled,
            coeffs: vec![1; len],
        }
    }

    /// Product truncated to the shorter length.
    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0i64; len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        CharacterSeries {
            offset_doubled: self.offset_doubled + other.offset_doubled,
            coeffs,
        }
    }

    /// Multiplication by `1 - q`: turns a character into multiplicities of
    /// the `H^{offset/2 + k}`.
    pub fn times_one_minus_q(&self) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|k| self.coeffs[k] - if k > 0 { self.coeffs[k - 1] } else { 0 })
            .collect();
        CharacterSeries {
            offset_doubled: self.offset_doubled,
            coeffs,
        }
    }

    /// Division by `1 - q` (partial sums).
    pub fn over_one_minus_q(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .scan(0i64, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        CharacterSeries {
            offset_doubled: self.offset_doubled,
            coeffs,
        }
    }
}

/// Outcome of [`wedge_halfform_weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeWeights {
    /// Doubled lowest weights `n^2 + 2kn`, `k = 0..=kmax`.
    pub weights_doubled: Vec<i64>,
    /// All multiplicities read off the character are 0 or 1.
    pub multiplicity_free: bool,
    /// The nonzero multiplicities sit exactly at the predicted weights.
    pub matches_character: bool,
    /// `(doubled weight, multiplicity)` for every summand read off the
    /// character up to the last predicted weight.
    pub observed: Vec<(i64, i64)>,
}

/// Character coefficients of `Λ^n(H^{1/2})`: the number of `n`-element sets of
/// odd positive integers with sum `W` (doubled weight), for `W <= wmax`.
fn wedge_character(n: usize, wmax: usize) -> Vec<i64> {
    // dp[l][w] over the odd integers processed so far
    let mut dp = vec![vec![0i64; wmax + 1]; n + 1];
    dp[0][0] = 1;
    let mut odd = 1;
    while odd <= wmax {
        for l in (1..=n).rev() {
            for w in (odd..=wmax).rev() {
                dp[l][w] += dp[l - 1][w - odd];
            }
        }
        odd += 2;
    }
    dp[n].clone()
}

/// Predicted lowest weights `n^2/2 + kn` of `Λ^n(H^{1/2})` up to `k = kmax`,
/// checked against the `x^n` coefficient of `∏_j (1 + x q^{j+1/2})`.
///
/// That coefficient is `q^{n^2/2} / ∏_{k=1}^n (1 - q^k)`, so the actual
/// multiplicities are those of `q^{n^2/2} / ∏_{k=2}^n (1 - q^k)`; the
/// prediction holds for `n = 2` only and `observed` carries the truth.
pub fn wedge_halfform_weights(n: usize, kmax: usize) -> Result<WedgeWeights> {
    if n == 0 {
        return Err(Error::InvalidParameter("exterior power needs n >= 1".into()));
    }
    let predicted: Vec<i64> = (0..=kmax).map(|k| (n * n + 2 * k * n) as i64).collect();
    let wmax = *predicted.last().expect("nonempty") as usize;
    let chars = wedge_character(n, wmax);
    // one step of q is a doubled step of 2
    let mult: Vec<i64> = (0..=wmax)
        .map(|w| chars[w] - if w >= 2 { chars[w - 2] } else { 0 })
        .collect();
    let multiplicity_free = mult.iter().all(|&m| m == 0 || m == 1);
    let observed: Vec<(i64, i64)> = (0..=wmax)
        .filter(|&w| mult[w] != 0)
        .map(|w| (w as i64, mult[w]))
        .collect();
    let support: Vec<i64> = observed.iter().map(|&(w, _)| w).collect();
    Ok(WedgeWeights {
        matches_character: support == predicted,
        weights_doubled: predicted,
        multiplicity_free,
        observed,
    })
}

/// Multiplicities of `H^N`, `N = 0..=nmax`, in `Λ^2(H^{1/2})`.
pub fn wedge2_multiplicities(nmax: usize) -> Vec<i64> {
    let chars = wedge_character(2, 2 * nmax);
    (0..=nmax)
        .map(|n| chars[2 * n] - if n >= 1 { chars[2 * n - 2] } else { 0 })
        .collect()
}

/// Outcome of [`tensor_decomp_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub holds: bool,
    /// Doubled weights of the summands `H^{s+t+k}` read off the product.
    pub weights_doubled: Vec<i64>,
    pub multiplicities: Vec<i64>,
}

/// Checks `q^s/(1-q) · q^t/(1-q) = Σ_{k>=0} q^{s+t+k}/(1-q)` through `q^{s+t+nmax}`
/// (weights doubled), and reads off the decomposition of `H^s ⊗ H^t`.
pub fn tensor_decomp_check(s_doubled: i64, t_doubled: i64, nmax: usize) -> Result<TensorReport> {
    if s_doubled <= 0 || t_doubled <= 0 {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    let len = nmax + 1;
    let lhs = CharacterSeries::discrete_series(s_doubled, len)
        .mul(&CharacterSeries::discrete_series(t_doubled, len));
    let rhs = CharacterSeries {
        offset_doubled: s_doubled + t_doubled,
        coeffs: vec![1; len],
    }
    .over_one_minus_q();
    let mult = lhs.times_one_minus_q();
    Ok(TensorReport {
        holds: lhs == rhs,
        weights_doubled: (0..len as i64).map(|k| s_doubled + t_doubled + 2 * k).collect(),
        multiplicities: mult.coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_partitions_length(4, 2), 2);
        assert_eq!((0..=4).map(|n| count_partitions_length(4, n)).sum::<u64>(), 5);
        assert_eq!(count_partitions_length(0, 0), 1);
        assert_eq!(count_partitions_length_no_ones(4, 2), 1);
    }

    #[test]
    fn wedge_two() {
        let w = wedge_halfform_weights(2, 5).unwrap();
        assert_eq!(w.weights_doubled, vec![4, 8, 12, 16, 20, 24]);
        assert!(w.multiplicity_free && w.matches_character);
    }
}
