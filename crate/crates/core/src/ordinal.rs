//! Bandt–Pompe symbolization.
//!
//! A window of `D` values is replaced by its ordinal pattern: position `i`
//! holds the rank of `window[i]` among the window entries, `0` for the
//! smallest. Equal values are ranked by position, the earlier one lower.
//! Patterns index the probability vector by their Lehmer rank, i.e. their
//! position in the lexicographic enumeration of permutations of `0..D`, so
//! rank 0 is the identity (increasing) pattern and `D! - 1` the decreasing one.

use crate::error::{Error, Result};
use crate::grid::Sequence;
use crate::par;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 8;

/// Below `UNDERSAMPLING_FACTOR * D!` windows the distribution is flagged.
pub const UNDERSAMPLING_FACTOR: u64 = 10;

const COUNT_CHUNK: usize = 1 << 16;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinalPattern {
    ranks: Vec<u8>,
}

impl OrdinalPattern {
    pub fn new(ranks: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            match seen.get_mut(r as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(Error::argument(format!(
                        "{ranks:?} is not a permutation of 0..{}",
                        ranks.len()
                    )))
                }
            }
        }
        Ok(OrdinalPattern { ranks })
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn order(&self) -> usize {
        self.ranks.len()
    }

    /// Inverse of [`lehmer_rank`].
    pub fn from_lehmer(mut rank: u64, order: usize) -> Result<Self> {
        if order > 20 || rank >= factorial(order) {
            return Err(Error::argument(format!(
                "Lehmer rank {rank} invalid for order {order}"
            )));
        }
        let mut pool: Vec<u8> = (0..order as u8).collect();
        let mut ranks = Vec::with_capacity(order);
        for i in 0..order {
            let f = factorial(order - 1 - i);
            let digit = (rank / f) as usize;
            rank %= f;
            ranks.push(pool.remove(digit));
        }
        Ok(OrdinalPattern { ranks })
    }
}

/// Rank vector of `window`, ties broken by position.
pub fn extract_pattern(window: &[f64]) -> OrdinalPattern {
    let mut idx: Vec<usize> = (0..window.len()).collect();
    idx.sort_by(|&a, &b| window[a].total_cmp(&window[b]).then(a.cmp(&b)));
    let mut ranks = vec![0u8; window.len()];
    for (rank, &i) in idx.iter().enumerate() {
        ranks[i] = rank as u8;
    }
    OrdinalPattern { ranks }
}

/// Lexicographic rank of `pattern` among the permutations of `0..D`.
pub fn lehmer_rank(pattern: &OrdinalPattern) -> u64 {
    let r = &pattern.ranks;
    let d = r.len();
    let mut rank = 0;
    for i in 0..d {
        let smaller_after = r[i + 1..].iter().filter(|&&v| v < r[i]).count() as u64;
        rank += smaller_after * factorial(d - 1 - i);
    }
    rank
}

/// Lehmer rank of the ordinal pattern of `window`, computed without sorting.
/// Equivalent to `lehmer_rank(&extract_pattern(window))`.
pub fn window_lehmer(window: &[f64]) -> u64 {
    let d = window.len();
    let mut rank = 0u64;
    for i in 0..d.saturating_sub(1) {
        let smaller = window[i + 1..].iter().filter(|&&v| v < window[i]).count() as u64;
        rank += smaller * factorial(d - 1 - i);
    }
    rank
}

/// Lehmer rank of the pattern of `x[start], x[start+delay], ...` without
/// materializing it. Under the tie rule a later element ranks below an
/// earlier one only when strictly smaller.
#[inline]
fn window_rank(x: &[f64], start: usize, order: usize, delay: usize, fact: &[u64]) -> usize {
    let mut rank = 0u64;
    for i in 0..order - 1 {
        let xi = x[start + i * delay];
        let mut smaller = 0u64;
        for j in i + 1..order {
            smaller += u64::from(x[start + j * delay] < xi);
        }
        rank += smaller * fact[order - 1 - i];
    }
    rank as usize
}

fn check_params(len: usize, order: usize, delay: usize) -> Result<usize> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::argument(format!(
            "embedding dimension must be in {MIN_ORDER}..={MAX_ORDER}, got {order}"
        )));
    }
    if delay == 0 {
        return Err(Error::argument("embedding delay must be >= 1"));
    }
    let span = (order - 1) * delay;
    if len <= span {
        return Err(Error::argument(format!(
            "series of length {len} is too short for D={order}, tau={delay}"
        )));
    }
    Ok(len - span)
}

fn count_range(x: &[f64], lo: usize, hi: usize, order: usize, delay: usize) -> Vec<u64> {
    let fact: Vec<u64> = (0..=order).map(factorial).collect();
    let mut counts = vec![0u64; fact[order] as usize];
    for s in lo..hi {
        counts[window_rank(x, s, order, delay, &fact)] += 1;
    }
    counts
}

/// Raw pattern counts in Lehmer order, single-threaded.
pub fn count_patterns_seq(x: &[f64], order: usize, delay: usize) -> Result<Vec<u64>> {
    let windows = check_params(x.len(), order, delay)?;
    Ok(count_range(x, 0, windows, order, delay))
}

/// Raw pattern counts in Lehmer order. Windows are split into chunks whose
/// histograms are merged; with the `parallel` feature chunks run on rayon.
pub fn count_patterns(x: &[f64], order: usize, delay: usize) -> Result<Vec<u64>> {
    let windows = check_params(x.len(), order, delay)?;
    let counts = par::chunked_reduce(
        windows,
        COUNT_CHUNK,
        |lo, hi| count_range(x, lo, hi, order, delay),
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(counts.unwrap_or_else(|| vec![0; factorial(order) as usize]))
}

/// Pattern probabilities over all `D!` patterns, in Lehmer order.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalDistribution {
    order: usize,
    delay: usize,
    counts: Vec<u64>,
    probs: Vec<f64>,
    samples: u64,
}

impl OrdinalDistribution {
    /// Builds a distribution from raw Lehmer-ordered counts. `counts.len()`
    /// must equal `order!`.
    pub fn from_counts(order: usize, delay: usize, counts: Vec<u64>) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) || counts.len() as u64 != factorial(order) {
            return Err(Error::argument(format!(
                "{} counts do not match order {order}",
                counts.len()
            )));
        }
        let samples: u64 = counts.iter().sum();
        let probs = if samples == 0 {
            vec![0.0; counts.len()]
        } else {
            counts.iter().map(|&c| c as f64 / samples as f64).collect()
        };
        Ok(OrdinalDistribution {
            order,
            delay,
            counts,
            probs,
            samples,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn undersampled(&self) -> bool {
        self.samples < UNDERSAMPLING_FACTOR * factorial(self.order)
    }
}

/// Symbolizes `seq` with embedding dimension `order` and delay `delay`.
///
/// Undersampling (fewer than `10 * D!` windows) is logged, not rejected; see
/// [`OrdinalDistribution::undersampled`].
pub fn build_distribution(
    seq: &Sequence,
    order: usize,
    delay: usize,
) -> Result<OrdinalDistribution> {
    let counts = count_patterns(seq.as_slice(), order, delay)?;
    let dist = OrdinalDistribution::from_counts(order, delay, counts)?;
    if dist.undersampled() {
        log::warn!(
            "{} windows for {} patterns (D={order}): distribution is undersampled",
            dist.samples(),
            factorial(order)
        );
    }
    Ok(dist)
}
