//! Two-dimensional ordinal patches: every `dx x dy` submatrix (rows x
//! columns, with per-axis delays) is flattened row by row and symbolized like
//! a 1D window. Used as the row-wise baseline against Hilbert scanning.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarGrid;
use crate::hilbert;
use crate::ordinal::{self, factorial, OrdinalDistribution};
use crate::par;
use crate::quantifiers::{self, InfoTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchSpec {
    /// Patch rows.
    pub dx: usize,
    /// Patch columns.
    pub dy: usize,
    pub tau_x: usize,
    pub tau_y: usize,
}

impl PatchSpec {
    pub fn new(dx: usize, dy: usize, tau_x: usize, tau_y: usize) -> Result<Self> {
        let spec = PatchSpec {
            dx,
            dy,
            tau_x,
            tau_y,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dx * self.dy;
        if self.dx == 0 || self.dy == 0 || !(ordinal::MIN_ORDER..=ordinal::MAX_ORDER).contains(&d) {
            return Err(Error::argument(format!(
                "patch {}x{} must hold between {} and {} cells",
                self.dx,
                self.dy,
                ordinal::MIN_ORDER,
                ordinal::MAX_ORDER
            )));
        }
        if self.tau_x == 0 || self.tau_y == 0 {
            return Err(Error::argument("patch delays must be >= 1"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.dx * self.dy
    }
}

impl std::str::FromStr for PatchSpec {
    type Err = Error;

    /// Parses `DXxDY` with unit delays, or `DXxDY:TXxTY`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::argument(format!(
                "cannot parse patch spec {s:?}, expected e.g. 2x4 or 2x4:1x1"
            ))
        };
        let pair = |p: &str| -> Result<(usize, usize)> {
            let (a, b) = p.split_once('x').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        let (dims, delays) = match s.split_once(':') {
            Some((d, t)) => (pair(d)?, pair(t)?),
            None => (pair(s)?, (1, 1)),
        };
        PatchSpec::new(dims.0, dims.1, delays.0, delays.1)
    }
}

fn patch_counts(grid: &ScalarGrid, spec: &PatchSpec, rows: usize, cols: usize) -> Vec<u64> {
    let d = spec.order();
    let alphabet = factorial(d) as usize;
    par::chunked_reduce(
        rows,
        16,
        |lo, hi| {
            let mut counts = vec![0u64; alphabet];
            let mut window = [0.0; ordinal::MAX_ORDER];
            for r in lo..hi {
                for c in 0..cols {
                    let mut k = 0;
                    for i in 0..spec.dx {
                        for j in 0..spec.dy {
                            window[k] = grid.get(c + j * spec.tau_y, r + i * spec.tau_x);
                            k += 1;
                        }
                    }
                    counts[ordinal::window_lehmer(&window[..d]) as usize] += 1;
                }
            }
            counts
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
    .unwrap_or_else(|| vec![0; alphabet])
}

/// Distribution of row-wise flattened patch patterns over every anchor
/// position, in Lehmer order over `(dx dy)!` patterns.
pub fn build_distribution_2d(grid: &ScalarGrid, spec: &PatchSpec) -> Result<OrdinalDistribution> {
    spec.validate()?;
    let n = grid.side();
    let span_r = (spec.dx - 1) * spec.tau_x;
    let span_c = (spec.dy - 1) * spec.tau_y;
    if span_r >= n || span_c >= n {
        return Err(Error::argument(format!(
            "{}x{} patch with delays {}x{} does not fit a {n}x{n} grid",
            spec.dx, spec.dy, spec.tau_x, spec.tau_y
        )));
    }
    let counts = patch_counts(grid, spec, n - span_r, n - span_c);
    let dist = OrdinalDistribution::from_counts(spec.order(), spec.tau_x.max(spec.tau_y), counts)?;
    if dist.undersampled() {
        log::warn!(
            "{} patches for {} patterns: distribution is undersampled",
            dist.samples(),
            factorial(spec.order())
        );
    }
    Ok(dist)
}

/// Triples of the Hilbert-path method at order `order` and of the patch
/// method at `spec`, on the same grid. Requires `dx * dy == order` so both
/// use the same alphabet.
pub fn compare_methods(
    grid: &ScalarGrid,
    order: usize,
    delay: usize,
    spec: &PatchSpec,
) -> Result<(InfoTriple, InfoTriple)> {
    if spec.order() != order {
        return Err(Error::argument(format!(
            "patch {}x{} has {} cells but D = {order}",
            spec.dx,
            spec.dy,
            spec.order()
        )));
    }
    let seq = hilbert::unfold(grid);
    let path = quantifiers::info_triple(&ordinal::build_distribution(&seq, order, delay)?)?;
    let patch = quantifiers::info_triple(&build_distribution_2d(grid, spec)?)?;
    Ok((path, patch))
}
