//! Information quantifiers of a discrete distribution.
//!
//! Entropies use the natural logarithm and `0 ln 0 = 0`. Internally every
//! quantifier is evaluated on the probabilities scaled by the alphabet size,
//! `q_i = M p_i`, so the uniform distribution (all `q_i = 1`) and the deltas
//! land exactly on their analytic values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordinal::OrdinalDistribution;

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Normalized entropy, statistical complexity and Fisher information of one
/// distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoTriple {
    pub entropy: f64,
    pub complexity: f64,
    pub fisher: f64,
}

fn validate(p: &[f64], min_len: usize) -> Result<()> {
    if p.len() < min_len {
        return Err(Error::argument(format!(
            "distribution needs at least {min_len} entries, got {}",
            p.len()
        )));
    }
    if let Some(v) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::argument(format!("invalid probability {v}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::argument(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

#[inline]
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Shannon entropy `-sum p ln p`.
pub fn shannon(p: &[f64]) -> Result<f64> {
    validate(p, 1)?;
    Ok(-p.iter().map(|&v| xlnx(v)).sum::<f64>())
}

// Sorted, so H and C are summed in an order independent of the state labels.
fn scaled(p: &[f64]) -> Vec<f64> {
    let m = p.len() as f64;
    let mut q: Vec<f64> = p.iter().map(|&v| v * m).collect();
    q.sort_unstable_by(f64::total_cmp);
    q
}

fn scaled_from_counts(dist: &OrdinalDistribution) -> Vec<f64> {
    let m = dist.counts().len() as u64;
    let n = dist.samples() as f64;
    let mut q: Vec<f64> = dist.counts().iter().map(|&c| (c * m) as f64 / n).collect();
    q.sort_unstable_by(f64::total_cmp);
    q
}

// H = 1 - sum(q ln q) / (M ln M)
fn entropy_scaled(q: &[f64]) -> f64 {
    let m = q.len() as f64;
    let s: f64 = q.iter().map(|&v| xlnx(v)).sum();
    (1.0 - s / (m * m.ln())).clamp(0.0, 1.0)
}

// J(P, Pe) = (1/M) sum [ q ln q / 2 - m ln m ],  m = (q + 1) / 2
fn js_scaled(q: &[f64]) -> f64 {
    let m = q.len() as f64;
    let s: f64 = q
        .iter()
        .map(|&v| 0.5 * xlnx(v) - xlnx(0.5 * (v + 1.0)))
        .sum();
    (s / m).max(0.0)
}

fn complexity_scaled(q: &[f64]) -> f64 {
    let q0 = js_scaled(q) / js_max(q.len());
    (q0.min(1.0) * entropy_scaled(q)).clamp(0.0, 1.0)
}

fn fisher_sqrt(p: &[f64]) -> f64 {
    let n = p.len();
    let f0 = if p[0] == 1.0 || p[n - 1] == 1.0 {
        1.0
    } else {
        0.5
    };
    let sum: f64 = p
        .windows(2)
        .map(|w| {
            let d = w[1].sqrt() - w[0].sqrt();
            d * d
        })
        .sum();
    (f0 * sum).clamp(0.0, 1.0)
}

/// `S[P] / ln M`, in `[0, 1]`.
pub fn entropy_normalized(p: &[f64]) -> Result<f64> {
    validate(p, 2)?;
    Ok(entropy_scaled(&scaled(p)))
}

/// Jensen–Shannon divergence between `p` and the uniform distribution over
/// the same alphabet.
pub fn js_divergence_to_uniform(p: &[f64]) -> Result<f64> {
    validate(p, 2)?;
    Ok(js_scaled(&scaled(p)))
}

/// Largest Jensen–Shannon divergence to the uniform over `m` states, reached
/// at any delta distribution.
pub fn js_max(m: usize) -> f64 {
    let m = m as f64;
    -0.5 * ((m + 1.0) / m * (m + 1.0).ln() - 2.0 * (2.0 * m).ln() + m.ln())
}

/// Statistical complexity `Q_J[P, Pe] * H[P]`, with the disequilibrium `Q_J`
/// the Jensen–Shannon divergence normalized by [`js_max`].
pub fn complexity_js(p: &[f64]) -> Result<f64> {
    validate(p, 2)?;
    Ok(complexity_scaled(&scaled(p)))
}

/// Discrete Fisher information over `p` in the given index order:
/// `F0 * sum (sqrt p[i+1] - sqrt p[i])^2`, with `F0 = 1` for a delta at the
/// first or last index and `1/2` otherwise.
pub fn fisher(p: &[f64]) -> Result<f64> {
    validate(p, 2)?;
    Ok(fisher_sqrt(p))
}

/// Fisher information of an ordinal distribution, which is stored in Lehmer
/// order.
pub fn fisher_discrete(dist: &OrdinalDistribution) -> Result<f64> {
    fisher(dist.probs())
}

/// `(H, C, F)` of an ordinal distribution.
pub fn info_triple(dist: &OrdinalDistribution) -> Result<InfoTriple> {
    if dist.samples() == 0 {
        return Err(Error::argument("distribution has no samples"));
    }
    let q = scaled_from_counts(dist);
    Ok(InfoTriple {
        entropy: entropy_scaled(&q),
        complexity: complexity_scaled(&q),
        fisher: fisher_sqrt(dist.probs()),
    })
}

/// `(H, C)` of an arbitrary probability vector.
pub fn entropy_complexity(p: &[f64]) -> Result<(f64, f64)> {
    validate(p, 2)?;
    let q = scaled(p);
    Ok((entropy_scaled(&q), complexity_scaled(&q)))
}

/// `(H, C)` of a distribution given as groups of `(probability, multiplicity)`
/// over an alphabet of `m` states, in O(groups).
fn grouped(groups: &[(f64, f64)], m: usize) -> (f64, f64) {
    let mf = m as f64;
    let mut s_q = 0.0;
    let mut s_js = 0.0;
    for &(p, mult) in groups {
        if mult == 0.0 {
            continue;
        }
        let q = p * mf;
        s_q += mult * xlnx(q);
        s_js += mult * (0.5 * xlnx(q) - xlnx(0.5 * (q + 1.0)));
    }
    let h = (1.0 - s_q / (mf * mf.ln())).clamp(0.0, 1.0);
    let q0 = ((s_js / mf).max(0.0) / js_max(m)).min(1.0);
    (h, q0 * h)
}

// One state at p, the other m-1 sharing 1-p.
fn min_family(p: f64, m: usize) -> (f64, f64) {
    let rest = (m - 1) as f64;
    grouped(&[(p, 1.0), ((1.0 - p) / rest, rest)], m)
}

// `zeros` empty states, one at p, the remaining ones sharing 1-p.
fn max_family(p: f64, zeros: usize, m: usize) -> (f64, f64) {
    let rest = (m - zeros - 1) as f64;
    grouped(
        &[(0.0, zeros as f64), (p, 1.0), ((1.0 - p) / rest, rest)],
        m,
    )
}

fn bisect_for_entropy(h: f64, mut lo: f64, mut hi: f64, eval: impl Fn(f64) -> (f64, f64)) -> f64 {
    // `eval(lo).0 <= h <= eval(hi).0` need not hold by direction; orient first.
    let increasing = eval(hi).0 >= eval(lo).0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let above = eval(mid).0 > h;
        if above == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    eval(0.5 * (lo + hi)).1
}

/// Upper boundary of the complexity–entropy plane at entropy `h`.
pub fn c_max_at(h: f64, m: usize) -> f64 {
    if m < 2 || h <= 0.0 || h >= 1.0 {
        return 0.0;
    }
    // branch with `zeros` empty states spans H in [ln k, ln(k+1)] / ln m, k = m - zeros - 1
    let target = h * (m as f64).ln();
    let mut k = (target.exp().floor() as usize).clamp(1, m - 1);
    while k > 1 && ((k as f64).ln()) > target {
        k -= 1;
    }
    while k < m - 1 && ((k + 1) as f64).ln() < target {
        k += 1;
    }
    let zeros = m - k - 1;
    bisect_for_entropy(h, 0.0, 1.0 / (k + 1) as f64, |p| max_family(p, zeros, m))
}

/// Lower boundary of the complexity–entropy plane at entropy `h`.
pub fn c_min_at(h: f64, m: usize) -> f64 {
    if m < 2 || h <= 0.0 || h >= 1.0 {
        return 0.0;
    }
    bisect_for_entropy(h, 1.0 / m as f64, 1.0, |p| min_family(p, m))
}

/// Boundary curves of the complexity–entropy plane for an alphabet of `m`
/// states, as `(H, C)` polylines sorted by increasing `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityBounds {
    pub alphabet: usize,
    pub max: Vec<(f64, f64)>,
    pub min: Vec<(f64, f64)>,
}

impl ComplexityBounds {
    pub fn c_max(&self, h: f64) -> f64 {
        c_max_at(h, self.alphabet)
    }

    pub fn c_min(&self, h: f64) -> f64 {
        c_min_at(h, self.alphabet)
    }

    /// Both curves evaluated on `n` evenly spaced entropies, for plotting
    /// large alphabets without walking every branch.
    pub fn on_entropy_grid(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::argument("need m >= 2 and n >= 2"));
        }
        let hs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        Ok(ComplexityBounds {
            alphabet: m,
            max: hs.iter().map(|&h| (h, c_max_at(h, m))).collect(),
            min: hs.iter().map(|&h| (h, c_min_at(h, m))).collect(),
        })
    }
}

/// Maximum and minimum complexity curves. The upper curve is the union of
/// the branches with `n = m-2, ..., 0` empty states, one state at
/// `p in [0, 1/(m-n)]` and the rest equal; the lower curve is the family with
/// one state at `p in [1/m, 1]` and the rest equal. Each branch contributes
/// `samples` points.
pub fn cecp_bounds(m: usize, samples: usize) -> Result<ComplexityBounds> {
    if m < 2 {
        return Err(Error::argument(format!(
            "alphabet size must be >= 2, got {m}"
        )));
    }
    if samples < 2 {
        return Err(Error::argument("need at least 2 samples per branch"));
    }
    let t = |i: usize| i as f64 / (samples - 1) as f64;
    let mut max = Vec::with_capacity((m - 1) * samples);
    for zeros in (0..=m - 2).rev() {
        let top = 1.0 / (m - zeros) as f64;
        max.extend((0..samples).map(|i| max_family(top * t(i), zeros, m)));
    }
    let lo = 1.0 / m as f64;
    let min = (0..samples)
        .map(|i| min_family(1.0 - (1.0 - lo) * t(i), m))
        .collect();
    Ok(ComplexityBounds {
        alphabet: m,
        max,
        min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(m: usize, at: usize) -> Vec<f64> {
        let mut p = vec![0.0; m];
        p[at] = 1.0;
        p
    }

    #[test]
    fn shannon_values() {
        let u = vec![1.0 / 120.0; 120];
        assert!((shannon(&u).unwrap() - 120f64.ln()).abs() < 1e-12);
        assert_eq!(shannon(&delta(5, 2)).unwrap(), 0.0);
        assert!((shannon(&[0.5, 0.5, 0.0, 0.0]).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_distributions() {
        assert!(shannon(&[0.5, 0.6]).is_err());
        assert!(shannon(&[1.5, -0.5]).is_err());
        assert!(entropy_normalized(&[1.0]).is_err());
        assert!(fisher(&[f64::NAN, 1.0]).is_err());
        assert!(cecp_bounds(1, 10).is_err());
    }

    #[test]
    fn normalized_entropy_values() {
        assert_eq!(entropy_normalized(&[1.0 / 6.0; 6]).unwrap(), 1.0);
        assert_eq!(entropy_normalized(&delta(6, 3)).unwrap(), 0.0);
        let half = [0.5, 0.5, 0.0, 0.0, 0.0, 0.0];
        let h = entropy_normalized(&half).unwrap();
        assert!((h - 2f64.ln() / 6f64.ln()).abs() < 1e-15);
        assert!((h - 0.3869).abs() < 1e-4);
    }

    #[test]
    fn complexity_vanishes_at_extremes() {
        for m in [6, 24, 120] {
            assert_eq!(complexity_js(&vec![1.0 / m as f64; m]).unwrap(), 0.0);
            assert_eq!(complexity_js(&delta(m, 1)).unwrap(), 0.0);
        }
    }

    #[test]
    fn js_max_matches_delta() {
        for m in [6, 24, 120] {
            let j = js_divergence_to_uniform(&delta(m, 0)).unwrap();
            assert!((j / js_max(m) - 1.0).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn fisher_values() {
        assert_eq!(fisher(&[1.0 / 24.0; 24]).unwrap(), 0.0);
        assert_eq!(fisher(&delta(6, 0)).unwrap(), 1.0);
        assert_eq!(fisher(&delta(6, 5)).unwrap(), 1.0);
        assert_eq!(fisher(&delta(6, 3)).unwrap(), 1.0);
        let f = fisher(&[0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((f - 0.25).abs() < 1e-15);
    }

    #[test]
    fn fisher_depends_on_order() {
        let p = [0.5, 0.5, 0.0, 0.0];
        let q = [0.5, 0.0, 0.5, 0.0];
        assert_ne!(fisher(&p).unwrap(), fisher(&q).unwrap());
        assert_eq!(
            entropy_normalized(&p).unwrap(),
            entropy_normalized(&q).unwrap()
        );
        assert_eq!(complexity_js(&p).unwrap(), complexity_js(&q).unwrap());
    }

    #[test]
    fn bounds_pass_through_endpoints() {
        for m in [2, 6, 24] {
            let b = cecp_bounds(m, 50).unwrap();
            for curve in [&b.max, &b.min] {
                let (h0, c0) = curve[0];
                let (h1, c1) = *curve.last().unwrap();
                assert!(h0.abs() < 1e-12 && c0.abs() < 1e-12, "m={m}");
                assert!((h1 - 1.0).abs() < 1e-12 && c1.abs() < 1e-12, "m={m}");
            }
            assert!(b.max.windows(2).all(|w| w[0].0 <= w[1].0 + 1e-12));
            assert!(b.min.windows(2).all(|w| w[0].0 <= w[1].0 + 1e-12));
        }
    }

    #[test]
    fn min_below_max() {
        for m in [3, 6, 24, 720] {
            for i in 1..100 {
                let h = i as f64 / 100.0;
                assert!(c_min_at(h, m) <= c_max_at(h, m) + 1e-12, "m={m} h={h}");
            }
        }
    }

    #[test]
    fn boundary_evaluation_hits_requested_entropy() {
        // a point produced by the family lies on the exact boundary evaluation
        let m = 24;
        let (h, c) = max_family(0.01, 20, m);
        assert!((c_max_at(h, m) - c).abs() < 1e-10);
        let (h, c) = min_family(0.3, m);
        assert!((c_min_at(h, m) - c).abs() < 1e-10);
    }
}
