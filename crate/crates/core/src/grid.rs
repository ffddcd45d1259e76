use crate::error::{Error, Result};

/// Row-major real matrix of arbitrary shape, as decoded from an image file.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Shape(format!("empty matrix {width}x{height}")));
        }
        if data.len() != width * height {
            return Err(Error::Shape(format!(
                "{} values for a {width}x{height} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Matrix {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Value at column `x`, row `y`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Square image with a power-of-two side, the unit a Hilbert curve can scan.
///
/// Values are stored row-major; `(x, y)` is (column, row) with the origin at
/// the top-left pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    level: u32,
    values: Vec<f64>,
}

impl ScalarGrid {
    pub const MAX_LEVEL: u32 = 15;

    /// Builds a grid from row-major values. `values.len()` must be `4^level`
    /// for some `level` in `1..=15` and every value must be finite.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let side = (n as f64).sqrt().round() as usize;
        if side * side != n || !side.is_power_of_two() || side < 2 {
            return Err(Error::Shape(format!(
                "{n} values do not form a square grid with a power-of-two side >= 2"
            )));
        }
        let level = side.trailing_zeros();
        if level > Self::MAX_LEVEL {
            return Err(Error::Shape(format!(
                "level {level} exceeds {}",
                Self::MAX_LEVEL
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Shape(format!(
                "non-finite value {} at pixel ({}, {})",
                values[i],
                i % side,
                i / side
            )));
        }
        Ok(ScalarGrid { level, values })
    }

    pub fn from_fn(level: u32, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let side = 1usize << level;
        let values = (0..side * side).map(|i| f(i % side, i / side)).collect();
        Self::from_values(values)
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.width() != m.height() {
            return Err(Error::Shape(format!(
                "{}x{} image is not square",
                m.width(),
                m.height()
            )));
        }
        Self::from_values(m.data().to_vec())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> usize {
        1 << self.level
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.side() + x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            width: self.side(),
            height: self.side(),
            data: self.values.clone(),
        }
    }
}

/// A 1D series, typically a grid unfolded along a Hilbert curve.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sequence(pub Vec<f64>);

impl Sequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Sequence {
    fn from(v: Vec<f64>) -> Self {
        Sequence(v)
    }
}
