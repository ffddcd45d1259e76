//! Synthetic test surfaces: quatrinomial multiplicative cascades and
//! fractional Brownian surfaces.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarGrid;
use crate::par;

/// Seedable generator used for every random surface. ChaCha8 streams are
/// portable across platforms and crate versions.
pub type SurfaceRng = ChaCha8Rng;

pub const MAX_CASCADE_STEPS: u32 = 12;
pub const MAX_FBS_LEVEL: u32 = 11;

/// Quatrinomial cascade: at every subdivision the four sub-squares receive
/// `probs[0..4]` times their parent's mass, assigned to
/// (top-left, top-right, bottom-left, bottom-right).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeSpec {
    pub probs: [f64; 4],
    pub steps: u32,
}

impl CascadeSpec {
    pub fn new(probs: &[f64], steps: u32) -> Result<Self> {
        let probs: [f64; 4] = probs.try_into().map_err(|_| {
            Error::argument(format!(
                "cascade needs 4 probabilities, got {}",
                probs.len()
            ))
        })?;
        let spec = CascadeSpec { probs, steps };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.probs.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::argument(format!(
                "cascade probabilities must be positive: {:?}",
                self.probs
            )));
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::argument(format!(
                "cascade probabilities sum to {total}, not 1"
            )));
        }
        if !(1..=MAX_CASCADE_STEPS).contains(&self.steps) {
            return Err(Error::argument(format!(
                "cascade steps must be in 1..={MAX_CASCADE_STEPS}, got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

/// Mass of every cell after `spec.steps` subdivisions.
///
/// A cell's value is `p1^n1 p2^n2 p3^n3 p4^n4`, where `n_i` counts how often
/// quadrant `i` occurs along its nesting chain. The product is always formed
/// in the same order, so cells with equal exponents carry bit-identical values.
pub fn cascade(spec: &CascadeSpec) -> Result<ScalarGrid> {
    spec.validate()?;
    let steps = spec.steps as usize;
    let side = 1usize << steps;
    let powers: Vec<Vec<f64>> = spec
        .probs
        .iter()
        .map(|&p| (0..=steps).map(|n| p.powi(n as i32)).collect())
        .collect();
    let rows: Vec<usize> = (0..side).collect();
    let filled = par::map(&rows, |&y| {
        (0..side)
            .map(|x| {
                let mut n = [0usize; 4];
                for b in 0..steps {
                    let q = (((y >> b) & 1) << 1) | ((x >> b) & 1);
                    n[q] += 1;
                }
                powers[0][n[0]] * powers[1][n[1]] * powers[2][n[2]] * powers[3][n[3]]
            })
            .collect::<Vec<f64>>()
    });
    ScalarGrid::from_values(filled.concat())
}

/// Same values sorted ascending and written back row-major.
pub fn ordered_variant(grid: &ScalarGrid) -> ScalarGrid {
    let mut values = grid.values().to_vec();
    values.sort_by(f64::total_cmp);
    ScalarGrid::from_values(values).expect("permutation of a valid grid")
}

/// Same values in a uniformly random order drawn from `seed`.
pub fn randomized_variant(grid: &ScalarGrid, seed: u64) -> ScalarGrid {
    let mut values = grid.values().to_vec();
    values.shuffle(&mut SurfaceRng::seed_from_u64(seed));
    ScalarGrid::from_values(values).expect("permutation of a valid grid")
}

/// Index-`H` fractional Brownian surface on the unit square sampled on a
/// `2^level` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbsSpec {
    pub hurst: f64,
    pub level: u32,
    pub seed: u64,
}

impl FbsSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.hurst > 0.0 && self.hurst < 1.0) {
            return Err(Error::argument(format!(
                "Hurst exponent must be in (0, 1), got {}",
                self.hurst
            )));
        }
        if !(1..=MAX_FBS_LEVEL).contains(&self.level) {
            return Err(Error::argument(format!(
                "fBs level must be in 1..={MAX_FBS_LEVEL}, got {}",
                self.level
            )));
        }
        Ok(())
    }
}

fn fft_2d(data: &mut [Complex64], n: usize, planner: &mut FftPlanner<f64>) {
    let fft = planner.plan_fft_forward(n);
    par::for_each_chunk_mut(data, n, |row| fft.process(row));
    let mut t = transpose(data, n);
    par::for_each_chunk_mut(&mut t, n, |col| fft.process(col));
    data.copy_from_slice(&transpose(&t, n));
}

fn transpose(data: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); n * n];
    for y in 0..n {
        for x in 0..n {
            out[x * n + y] = data[y * n + x];
        }
    }
    out
}

/// Compactly supported isotropic covariance whose circulant embedding is
/// nonnegative definite, and which equals `c0 - r^(2H) + c2 r^2` for `r <= 1`.
#[derive(Debug, Clone, Copy)]
struct EmbeddingCovariance {
    alpha: f64,
    radius: f64,
    beta: f64,
    c0: f64,
    c2: f64,
}

impl EmbeddingCovariance {
    fn new(hurst: f64) -> Self {
        let alpha = 2.0 * hurst;
        if alpha <= 1.5 {
            EmbeddingCovariance {
                alpha,
                radius: 1.0,
                beta: 0.0,
                c0: 1.0 - alpha / 2.0,
                c2: alpha / 2.0,
            }
        } else {
            let r: f64 = 2.0;
            let beta = alpha * (2.0 - alpha) / (3.0 * r * (r * r - 1.0));
            let c2 = (alpha - beta * (r - 1.0).powi(2) * (r + 2.0)) / 2.0;
            let c0 = beta * (r - 1.0).powi(3) + 1.0 - c2;
            EmbeddingCovariance {
                alpha,
                radius: r,
                beta,
                c0,
                c2,
            }
        }
    }

    fn at(&self, r: f64) -> f64 {
        if r <= 1.0 {
            self.c0 - r.powf(self.alpha) + self.c2 * r * r
        } else if r <= self.radius {
            self.beta * (self.radius - r).powi(3) / r
        } else {
            0.0
        }
    }
}

/// Smallest `2^a 3^b` not below `n`, a fast FFT length.
fn smooth_len(n: usize) -> usize {
    let mut best = usize::MAX;
    let mut p3 = 1;
    while p3 < 2 * n {
        let mut v = p3;
        while v < n {
            v *= 2;
        }
        best = best.min(v);
        p3 *= 3;
    }
    best
}

/// Exact fBs synthesis by circulant embedding of a locally modified
/// covariance (Stein's method).
///
/// A stationary Gaussian field `Y` with covariance `c0 - r^(2H) + c2 r^2` on
/// distances `r <= 1` is drawn on a periodic lattice with FFTs; then
/// `X(t) = Y(t) - Y(0) + sqrt(2 c2) (t . Z)` with `Z` a standard normal
/// vector has `E[X(s) - X(t)]^2 = 2 |s - t|^(2H)` exactly on the output
/// square, whose diagonal is kept below 1. The returned grid is scaled so the
/// squared increment at a one-pixel lag `l` has mean `(l / side)^(2H)`.
pub fn brownian_surface(spec: &FbsSpec) -> Result<ScalarGrid> {
    spec.validate()?;
    let side = 1usize << spec.level;
    let cov = EmbeddingCovariance::new(spec.hurst);

    // lattice spacing `1 / per_unit`, chosen so the output diagonal fits in r <= 1
    let per_unit =
        smooth_len(((side - 1) as f64 * std::f64::consts::SQRT_2).ceil() as usize).max(side);
    let delta = 1.0 / per_unit as f64;
    let half = (cov.radius as usize) * per_unit;
    let n = 2 * half;

    let mut lambda = vec![Complex64::default(); n * n];
    for j in 0..n {
        let dy = j.min(n - j) as f64 * delta;
        for i in 0..n {
            let dx = i.min(n - i) as f64 * delta;
            lambda[j * n + i] = Complex64::new(cov.at(dx.hypot(dy)), 0.0);
        }
    }
    let mut planner = FftPlanner::new();
    fft_2d(&mut lambda, n, &mut planner);

    let total = (n * n) as f64;
    let most_negative = lambda.iter().map(|l| l.re).fold(0.0, f64::min);
    if most_negative < -1e-8 * lambda[0].re.abs() {
        return Err(Error::Numeric(format!(
            "circulant embedding is not nonnegative definite (eigenvalue {most_negative:e})"
        )));
    }

    let mut rng = SurfaceRng::seed_from_u64(spec.seed);
    let mut field: Vec<Complex64> = lambda
        .iter()
        .map(|l| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im) * (l.re.max(0.0) / total).sqrt()
        })
        .collect();
    fft_2d(&mut field, n, &mut planner);

    let zx: f64 = StandardNormal.sample(&mut rng);
    let zy: f64 = StandardNormal.sample(&mut rng);
    let tilt = (2.0 * cov.c2).sqrt();
    let origin = field[0].re;
    // E[dX^2] = 2 (l delta)^(2H); rescale to (l / side)^(2H)
    let scale = std::f64::consts::FRAC_1_SQRT_2 * (per_unit as f64 / side as f64).powf(spec.hurst);
    let values = (0..side * side)
        .map(|k| {
            let (i, j) = (k % side, k / side);
            let t = (i as f64 * delta, j as f64 * delta);
            let x = field[j * n + i].re - origin + tilt * (t.0 * zx + t.1 * zy);
            x * scale
        })
        .collect();
    ScalarGrid::from_values(values)
}
