//! Planar Hilbert curve as a bijection between a linear index and grid cells.
//!
//! Orientation: the level-`N` curve starts at cell `(0, 0)` and ends at
//! `(2^N - 1, 0)`. With `(x, y)` read as (column, row) and the origin at the
//! top-left pixel, the level-1 curve visits `(0,0) (0,1) (1,1) (1,0)`.

use crate::error::{Error, Result};
use crate::grid::{ScalarGrid, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertMap {
    level: u32,
}

impl HilbertMap {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 || level > ScalarGrid::MAX_LEVEL {
            return Err(Error::argument(format!(
                "Hilbert level must be in 1..={}, got {level}",
                ScalarGrid::MAX_LEVEL
            )));
        }
        Ok(HilbertMap { level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> u64 {
        1 << self.level
    }

    pub fn total(&self) -> u64 {
        1 << (2 * self.level)
    }

    /// Cell visited at step `d` of the traversal.
    pub fn index_to_xy(&self, d: u64) -> Result<(u64, u64)> {
        if d >= self.total() {
            return Err(Error::Range {
                what: "hilbert index",
                value: d,
                bound: self.total(),
            });
        }
        Ok(d2xy(self.side(), d))
    }

    /// Step at which the traversal visits cell `(x, y)`.
    pub fn xy_to_index(&self, x: u64, y: u64) -> Result<u64> {
        let side = self.side();
        for (what, v) in [("x", x), ("y", y)] {
            if v >= side {
                return Err(Error::Range {
                    what,
                    value: v,
                    bound: side,
                });
            }
        }
        Ok(xy2d(side, x, y))
    }

    /// All cells in traversal order.
    pub fn path(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let side = self.side();
        (0..self.total()).map(move |d| d2xy(side, d))
    }
}

#[inline]
fn rotate(s: u64, x: &mut u64, y: &mut u64, rx: u64, ry: u64) {
    if ry == 0 {
        if rx == 1 {
            *x = s - 1 - *x;
            *y = s - 1 - *y;
        }
        std::mem::swap(x, y);
    }
}

fn d2xy(side: u64, d: u64) -> (u64, u64) {
    let (mut x, mut y) = (0, 0);
    let mut t = d;
    let mut s = 1;
    while s < side {
        let rx = 1 & (t / 2);
        let ry = 1 & (t ^ rx);
        rotate(s, &mut x, &mut y, rx, ry);
        x += s * rx;
        y += s * ry;
        t /= 4;
        s *= 2;
    }
    (x, y)
}

fn xy2d(side: u64, mut x: u64, mut y: u64) -> u64 {
    let mut d = 0;
    let mut s = side / 2;
    while s > 0 {
        let rx = u64::from(x & s > 0);
        let ry = u64::from(y & s > 0);
        d += s * s * ((3 * rx) ^ ry);
        rotate(side, &mut x, &mut y, rx, ry);
        s /= 2;
    }
    d
}

/// Reads every pixel of `grid` once, in Hilbert order.
pub fn unfold(grid: &ScalarGrid) -> Sequence {
    let map = HilbertMap {
        level: grid.level(),
    };
    let values = grid.values();
    let side = grid.side();
    Sequence(
        map.path()
            .map(|(x, y)| values[y as usize * side + x as usize])
            .collect(),
    )
}
