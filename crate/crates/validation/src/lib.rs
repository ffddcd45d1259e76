//! Reference implementations written without the `hilbtex` crate, used as
//! oracles by the acceptance suite.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// Lexicographic index of every permutation of `0..order`.
pub fn permutation_index(order: usize) -> HashMap<Vec<usize>, usize> {
    (0..order)
        .permutations(order)
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect()
}

/// Ordinal-pattern histogram by sorting each window on (value, position).
/// `index` must come from [`permutation_index`] for the same order.
pub fn naive_pattern_counts(
    x: &[f64],
    order: usize,
    delay: usize,
    index: &HashMap<Vec<usize>, usize>,
) -> Vec<u64> {
    let mut counts = vec![0u64; index.len()];
    let span = (order - 1) * delay;
    if x.len() <= span {
        return counts;
    }
    for s in 0..x.len() - span {
        let window: Vec<f64> = (0..order).map(|k| x[s + k * delay]).collect();
        let mut by_value: Vec<usize> = (0..order).collect();
        by_value.sort_by(|&a, &b| window[a].total_cmp(&window[b]).then(a.cmp(&b)));
        let mut ranks = vec![0; order];
        for (r, &i) in by_value.iter().enumerate() {
            ranks[i] = r;
        }
        counts[index[&ranks]] += 1;
    }
    counts
}

/// A random point of the `m`-simplex. Concentration and support size vary
/// between draws so that faces and vertices are reached as well as the
/// interior.
pub fn random_simplex<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    let alpha = [0.02, 0.1, 0.5, 1.0, 5.0][rng.random_range(0..5)];
    let support = rng.random_range(1..=m);
    let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
    let mut p = vec![0.0; m];
    let mut slots: Vec<usize> = (0..m).collect();
    for i in 0..support {
        let j = rng.random_range(i..m);
        slots.swap(i, j);
        p[slots[i]] = gamma.sample(rng) + f64::MIN_POSITIVE;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    p
}

/// Mean and sample standard deviation.
pub fn mean_sd(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Coefficient of determination of the least-squares line through `points`.
pub fn r_squared(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|(_, y)| (y - my).powi(2)).sum();
    sxy * sxy / (sxx * syy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn worked_example_counts() {
        let index = permutation_index(3);
        let c = naive_pattern_counts(&[4.0, 7.0, 9.0, 10.0, 6.0, 11.0, 3.0], 3, 1, &index);
        // rank vectors (0,1,2), (0,1,2), (1,2,0), (1,0,2), (1,2,0)
        assert_eq!(c, vec![2, 0, 1, 2, 0, 0]);
    }

    #[test]
    fn simplex_points_are_distributions() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for m in [2, 6, 120] {
            let p = random_simplex(&mut rng, m);
            assert!(p.iter().all(|&v| v >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn statistics() {
        assert_eq!(mean_sd(&[1.0, 2.0, 3.0]), (2.0, 1.0));
        assert!((r_squared(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]) - 1.0).abs() < 1e-15);
    }
}
