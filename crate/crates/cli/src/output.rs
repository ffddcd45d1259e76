//! JSON sidecars for generated images and per-run manifests.

use std::fs;
use std::path::{Path, PathBuf};

use hilbtex::imageio::Quantization;
use hilbtex::synth::{CascadeSpec, FbsSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Surface {
    Cascade { spec: CascadeSpec, variant: String },
    Fbs { spec: FbsSpec },
}

/// Everything needed to regenerate a written surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub surface: Surface,
    pub seed: Option<u64>,
    pub side: usize,
    pub quantization: Quantization,
    pub version: String,
}

impl Sidecar {
    /// Default embedding dimension for images of this kind.
    pub fn default_dim(&self) -> usize {
        match self.surface {
            Surface::Cascade { .. } => 6,
            Surface::Fbs { .. } => 5,
        }
    }
}

pub fn sidecar_path(image: &Path) -> PathBuf {
    image.with_extension("json")
}

/// Reads the sidecar of `image` if one exists and parses.
pub fn read_sidecar(image: &Path) -> Option<Sidecar> {
    let text = fs::read_to_string(sidecar_path(image)).ok()?;
    match serde_json::from_str(&text) {
        Ok(s) => Some(s),
        Err(e) => {
            log::warn!("{}: ignoring unreadable sidecar: {e}", image.display());
            None
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub verb: &'a str,
    pub arguments: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub seeds: Vec<u64>,
    pub parallel: bool,
}

impl Manifest<'_> {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        output.with_file_name(name)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
