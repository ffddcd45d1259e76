//! Image loading, reduction to a scalar field, power-of-two cropping and
//! rigid transforms.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use image::{DynamicImage, ImageReader};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Matrix, ScalarGrid};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageRecord {
    pub label: String,
    pub source_path: String,
    pub width: usize,
    pub height: usize,
    pub channels: u8,
    pub bit_depth: u8,
}

/// Decoded pixels, row-major with channels interleaved, in `[0, 2^bit_depth)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedImage {
    pub record: ImageRecord,
    pub pixels: Vec<u16>,
}

/// Reads a PGM/PPM (ASCII or binary), PNG or TIFF file. Alpha channels are
/// dropped.
///
/// PNM samples with a `maxval` below the container depth are stretched onto
/// the full 8- or 16-bit range by the decoder; the map is monotone.
pub fn load_image(path: impl AsRef<Path>) -> Result<LoadedImage> {
    let path = path.as_ref();
    let decode_err = |reason: String| Error::Decode {
        path: path.to_path_buf(),
        reason,
    };
    let reader = ImageReader::open(path)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?
        .with_guessed_format()
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
    let format = reader.format();
    let img = reader.decode().map_err(|e| {
        decode_err(match format {
            Some(f) => format!("{f:?}: {e}"),
            None => format!("unrecognized format: {e}"),
        })
    })?;
    let (width, height) = (img.width() as usize, img.height() as usize);
    let (channels, bit_depth, pixels): (u8, u8, Vec<u16>) = match img {
        DynamicImage::ImageLuma8(b) => (1, 8, b.into_raw().into_iter().map(u16::from).collect()),
        DynamicImage::ImageLumaA8(_) => (
            1,
            8,
            img.to_luma8()
                .into_raw()
                .into_iter()
                .map(u16::from)
                .collect(),
        ),
        DynamicImage::ImageRgb8(b) => (3, 8, b.into_raw().into_iter().map(u16::from).collect()),
        DynamicImage::ImageRgba8(_) => (
            3,
            8,
            img.to_rgb8()
                .into_raw()
                .into_iter()
                .map(u16::from)
                .collect(),
        ),
        DynamicImage::ImageLuma16(b) => (1, 16, b.into_raw()),
        DynamicImage::ImageLumaA16(_) => (1, 16, img.to_luma16().into_raw()),
        DynamicImage::ImageRgb16(b) => (3, 16, b.into_raw()),
        DynamicImage::ImageRgba16(_) => (3, 16, img.to_rgb16().into_raw()),
        other => {
            return Err(decode_err(format!(
                "unsupported pixel layout {:?}",
                other.color()
            )))
        }
    };
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(LoadedImage {
        record: ImageRecord {
            label,
            source_path: path.display().to_string(),
            width,
            height,
            channels,
            bit_depth,
        },
        pixels,
    })
}

/// Luminance weights for RGB input (ITU-R BT.601).
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

/// Reduces interleaved pixels to one value per pixel. Grayscale passes
/// through; RGB becomes `0.299 R + 0.587 G + 0.114 B`.
pub fn to_scalar(pixels: &[u16], channels: u8) -> Result<Vec<f64>> {
    match channels {
        1 => Ok(pixels.iter().map(|&v| f64::from(v)).collect()),
        3 => {
            if !pixels.len().is_multiple_of(3) {
                return Err(Error::Shape(format!(
                    "{} samples is not a whole number of RGB pixels",
                    pixels.len()
                )));
            }
            Ok(pixels
                .chunks_exact(3)
                .map(|c| {
                    LUMA_WEIGHTS[0] * f64::from(c[0])
                        + LUMA_WEIGHTS[1] * f64::from(c[1])
                        + LUMA_WEIGHTS[2] * f64::from(c[2])
                })
                .collect())
        }
        c => Err(Error::argument(format!("unsupported channel count {c}"))),
    }
}

impl LoadedImage {
    pub fn to_matrix(&self) -> Result<Matrix> {
        let values = to_scalar(&self.pixels, self.record.channels)?;
        Matrix::new(self.record.width, self.record.height, values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crop {
    pub x0: usize,
    pub y0: usize,
    pub side: usize,
}

fn pow2_floor(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        1 << (usize::BITS - 1 - n.leading_zeros())
    }
}

/// Centered square crop whose side is the largest power of two not above
/// `min(width, height)`.
pub fn center_crop_pow2(m: &Matrix) -> Result<(ScalarGrid, Crop)> {
    let side = pow2_floor(m.width().min(m.height()));
    if side < 2 {
        return Err(Error::Shape(format!(
            "{}x{} image is too small to crop",
            m.width(),
            m.height()
        )));
    }
    let crop = Crop {
        x0: (m.width() - side) / 2,
        y0: (m.height() - side) / 2,
        side,
    };
    let mut values = Vec::with_capacity(side * side);
    for y in 0..side {
        for x in 0..side {
            values.push(m.get(crop.x0 + x, crop.y0 + y));
        }
    }
    Ok((ScalarGrid::from_values(values)?, crop))
}

/// Lossless rigid transforms of a square grid. Rotations are clockwise as
/// displayed (row 0 at the top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Transform {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    Mirror,
}

impl Transform {
    pub const ALL: [Transform; 5] = [
        Transform::Identity,
        Transform::Rot90,
        Transform::Rot180,
        Transform::Rot270,
        Transform::Mirror,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Transform::Identity => "id",
            Transform::Rot90 => "rot90",
            Transform::Rot180 => "rot180",
            Transform::Rot270 => "rot270",
            Transform::Mirror => "mirror",
        }
    }
}

impl std::str::FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Transform::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::argument(format!("unknown transform {s:?}")))
    }
}

/// Applies `op` to `grid`. `(x, y)` is (column, row).
pub fn transform(grid: &ScalarGrid, op: Transform) -> ScalarGrid {
    let n = grid.side();
    let last = n - 1;
    let src: fn(usize, usize, usize) -> (usize, usize) = match op {
        Transform::Identity => |x, y, _| (x, y),
        Transform::Rot90 => |x, y, last| (y, last - x),
        Transform::Rot180 => |x, y, last| (last - x, last - y),
        Transform::Rot270 => |x, y, last| (last - y, x),
        Transform::Mirror => |x, y, last| (last - x, y),
    };
    ScalarGrid::from_fn(grid.level(), |x, y| {
        let (sx, sy) = src(x, y, last);
        grid.get(sx, sy)
    })
    .expect("transform preserves shape")
}

/// Side of the largest power-of-two square that fits inside `m` after a
/// rotation by `degrees` about its center.
pub fn rotated_pow2_side(m: &Matrix, degrees: f64) -> usize {
    let t = degrees.to_radians();
    let shrink = t.cos().abs() + t.sin().abs();
    let fit = (m.width().min(m.height()) as f64 / shrink + 1e-9).floor() as usize;
    pow2_floor(fit)
}

/// Nearest-neighbour rotation by `degrees` (clockwise as displayed) about
/// the image center, cropped to the largest centered power-of-two square
/// that contains no pixels from outside the source.
///
/// This is lossy: pixels are resampled and the corners are discarded.
pub fn rotate_arbitrary(m: &Matrix, degrees: f64) -> Result<ScalarGrid> {
    rotate_to_side(m, degrees, rotated_pow2_side(m, degrees))
}

/// [`rotate_arbitrary`] with an explicit output side, e.g. to compare several
/// angles on squares of one size.
pub fn rotate_to_side(m: &Matrix, degrees: f64, side: usize) -> Result<ScalarGrid> {
    if !side.is_power_of_two() || side < 2 {
        return Err(Error::argument(format!(
            "output side {side} is not a power of two >= 2"
        )));
    }
    let max = rotated_pow2_side(m, degrees);
    if side > max {
        return Err(Error::argument(format!(
            "side {side} does not fit a {}x{} image rotated by {degrees} degrees",
            m.width(),
            m.height()
        )));
    }
    let t = degrees.to_radians();
    let (sin, cos) = t.sin_cos();
    let cx = (m.width() as f64 - 1.0) / 2.0;
    let cy = (m.height() as f64 - 1.0) / 2.0;
    let half = (side as f64 - 1.0) / 2.0;
    let clamp = |v: f64, n: usize| (v.round().max(0.0) as usize).min(n - 1);
    let level = side.trailing_zeros();
    ScalarGrid::from_fn(level, |i, j| {
        let u = i as f64 - half;
        let v = j as f64 - half;
        let sx = cx + cos * u + sin * v;
        let sy = cy - sin * u + cos * v;
        m.get(clamp(sx, m.width()), clamp(sy, m.height()))
    })
}

/// Linear 16-bit quantization range recorded when writing a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantization {
    pub min: f64,
    pub max: f64,
}

/// Writes `grid` as a binary 16-bit PGM, mapping `[min, max]` linearly onto
/// `[0, 65535]`. The range is also stored in a header comment.
pub fn write_pgm16(grid: &ScalarGrid, path: impl AsRef<Path>) -> Result<Quantization> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let min = grid.values().iter().copied().fold(f64::INFINITY, f64::min);
    let max = grid
        .values()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    let side = grid.side();
    write!(out, "P5\n# min={min:e} max={max:e}\n{side} {side}\n65535\n").map_err(io_err)?;
    for &v in grid.values() {
        let q = if span > 0.0 {
            ((v - min) / span * 65535.0).round() as u16
        } else {
            0
        };
        out.write_all(&q.to_be_bytes()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(Quantization { min, max })
}
