//! The analysis CSV: fixed column order, 12 significant digits.

use std::fs::File;
use std::path::Path;

use serde::Deserialize;

use crate::error::CliError;

pub const HEADER: [&str; 12] = [
    "label",
    "source",
    "method",
    "D",
    "tau",
    "transform",
    "H",
    "C",
    "F",
    "samples",
    "undersampled",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct AnalysisRow {
    pub label: String,
    pub source: String,
    pub method: String,
    #[serde(rename = "D")]
    pub dim: usize,
    pub tau: usize,
    pub transform: String,
    #[serde(rename = "H")]
    pub entropy: f64,
    #[serde(rename = "C")]
    pub complexity: f64,
    #[serde(rename = "F")]
    pub fisher: f64,
    pub samples: u64,
    pub undersampled: bool,
    pub seed: Option<u64>,
}

/// Formats `v` with `digits` significant digits, dropping trailing zeros.
/// Magnitudes outside `[1e-5, 1e12)` use exponent notation.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

impl AnalysisRow {
    fn record(&self) -> [String; 12] {
        [
            self.label.clone(),
            self.source.clone(),
            self.method.clone(),
            self.dim.to_string(),
            self.tau.to_string(),
            self.transform.clone(),
            format_sig(self.entropy, 12),
            format_sig(self.complexity, 12),
            format_sig(self.fisher, 12),
            self.samples.to_string(),
            self.undersampled.to_string(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        ]
    }
}

pub fn write_rows(path: &Path, rows: &[AnalysisRow]) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    w.write_record(HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_err)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_rows(path: &Path) -> Result<Vec<AnalysisRow>, CliError> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    if r.headers().map_err(csv_err)?.is_empty() {
        return Ok(Vec::new());
    }
    r.deserialize().collect::<Result<_, _>>().map_err(csv_err)
}
