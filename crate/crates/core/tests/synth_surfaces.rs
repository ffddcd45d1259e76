use std::collections::BTreeMap;

use hilbtex::batch::analyze_grid;
use hilbtex::synth::{self, brownian_surface, cascade, CascadeSpec, FbsSpec};
use hilbtex::ScalarGrid;

const REFERENCE_PROBS: [f64; 4] = [0.2434, 0.2522, 0.2566, 0.2478];

fn aggregate(g: &ScalarGrid) -> Vec<f64> {
    let half = g.side() / 2;
    (0..half * half)
        .map(|i| {
            let (x, y) = (2 * (i % half), 2 * (i / half));
            g.get(x, y) + g.get(x + 1, y) + g.get(x, y + 1) + g.get(x + 1, y + 1)
        })
        .collect()
}

#[test]
fn cascade_block_sums_give_coarser_cascade() {
    for steps in 2..=8 {
        let fine = cascade(&CascadeSpec::new(&REFERENCE_PROBS, steps).unwrap()).unwrap();
        let coarse = cascade(&CascadeSpec::new(&REFERENCE_PROBS, steps - 1).unwrap()).unwrap();
        for (a, b) in aggregate(&fine).iter().zip(coarse.values()) {
            assert!((a - b).abs() <= 1e-12 * b, "steps {steps}: {a} vs {b}");
        }
    }
}

fn multinomial(n: &[usize]) -> u64 {
    let f = |k: usize| (1..=k as u64).product::<u64>();
    f(n.iter().sum()) / n.iter().map(|&k| f(k)).product::<u64>()
}

#[test]
fn cascade_values_follow_multinomial_classes() {
    for steps in 1..=5usize {
        let g = cascade(&CascadeSpec::new(&REFERENCE_PROBS, steps as u32).unwrap()).unwrap();
        let mut observed: BTreeMap<u64, usize> = BTreeMap::new();
        for v in g.values() {
            *observed.entry(v.to_bits()).or_default() += 1;
        }
        let mut expected: Vec<(f64, u64)> = Vec::new();
        for n1 in 0..=steps {
            for n2 in 0..=steps - n1 {
                for n3 in 0..=steps - n1 - n2 {
                    let n = [n1, n2, n3, steps - n1 - n2 - n3];
                    let value: f64 = n
                        .iter()
                        .zip(REFERENCE_PROBS)
                        .map(|(&k, p)| p.powi(k as i32))
                        .product();
                    expected.push((value, multinomial(&n)));
                }
            }
        }
        assert!(observed.len() <= expected.len());
        // match every observed class to the enumerated class it equals
        for (&bits, &count) in &observed {
            let v = f64::from_bits(bits);
            let (_, mult) = expected
                .iter()
                .find(|(e, _)| (e - v).abs() <= 1e-14 * v)
                .unwrap_or_else(|| panic!("steps {steps}: unexpected value {v}"));
            assert_eq!(count as u64, *mult, "steps {steps}, value {v}");
        }
    }
}

#[test]
fn binomial_cascade_is_the_column_marginal() {
    // with probs (a/2, b/2, a/2, b/2) each column carries the 1D binomial mass
    let (a, b) = (0.3, 0.7);
    let steps = 6;
    let g =
        cascade(&CascadeSpec::new(&[a / 2.0, b / 2.0, a / 2.0, b / 2.0], steps).unwrap()).unwrap();
    let mut binomial = vec![1.0];
    for _ in 0..steps {
        binomial = binomial.iter().flat_map(|&m| [m * a, m * b]).collect();
    }
    for (x, expected) in binomial.iter().enumerate() {
        let column: f64 = (0..g.side()).map(|y| g.get(x, y)).sum();
        assert!((column - expected).abs() < 1e-12, "column {x}");
    }
}

#[test]
fn shuffled_cascade_looks_like_noise() {
    let g = cascade(&CascadeSpec::new(&REFERENCE_PROBS, 8).unwrap()).unwrap();
    let a = analyze_grid(&synth::randomized_variant(&g, 3), 5, 1).unwrap();
    assert!(a.triple.entropy > 0.99, "{a:?}");
}

fn increment_variance(g: &ScalarGrid, lag: usize) -> (f64, usize) {
    let s = g.side();
    let mut sum = 0.0;
    let mut n = 0;
    for y in 0..s {
        for x in 0..s - lag {
            let dx = g.get(x + lag, y) - g.get(x, y);
            let dy = g.get(y, x + lag) - g.get(y, x);
            sum += dx * dx + dy * dy;
            n += 2;
        }
    }
    (sum, n)
}

#[test]
fn unit_lag_variance_matches_law() {
    let (mut sum, mut n) = (0.0, 0);
    for seed in 0..30 {
        let g = brownian_surface(&FbsSpec {
            hurst: 0.5,
            level: 9,
            seed,
        })
        .unwrap();
        let (s, k) = increment_variance(&g, 1);
        sum += s;
        n += k;
    }
    let expected = (1.0f64 / 512.0).powf(1.0);
    let ratio = sum / n as f64 / expected;
    assert!((ratio - 1.0).abs() < 0.10, "ratio {ratio}");
}

#[test]
fn increment_variance_scales_with_hurst_power() {
    let lags = [1usize, 2, 4, 8];
    for hurst in [0.3, 0.5, 0.7] {
        let mut acc = [(0.0, 0usize); 4];
        for seed in 0..30 {
            let g = brownian_surface(&FbsSpec {
                hurst,
                level: 8,
                seed,
            })
            .unwrap();
            for (slot, &lag) in acc.iter_mut().zip(&lags) {
                let (s, k) = increment_variance(&g, lag);
                slot.0 += s;
                slot.1 += k;
            }
        }
        let v1 = acc[0].0 / acc[0].1 as f64;
        for (i, &lag) in lags.iter().enumerate().skip(1) {
            let observed = acc[i].0 / acc[i].1 as f64 / v1;
            let law = (lag as f64).powf(2.0 * hurst);
            assert!(
                (observed / law - 1.0).abs() < 0.20,
                "H={hurst} lag {lag}: {observed} vs {law}"
            );
        }
    }
}

#[test]
fn rougher_surfaces_have_higher_entropy() {
    let mean_entropy = |hurst: f64| {
        (0..10)
            .map(|seed| {
                let g = brownian_surface(&FbsSpec {
                    hurst,
                    level: 8,
                    seed,
                })
                .unwrap();
                analyze_grid(&g, 5, 1).unwrap().triple.entropy
            })
            .sum::<f64>()
            / 10.0
    };
    assert!(mean_entropy(0.1) > mean_entropy(0.9));
}
