//! `key = value` config files, merged underneath command-line flags.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str, path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected key = value",
                path.display(),
                n + 1
            ))
        })?;
        let key = key.trim();
        if key.is_empty() || key == "config" {
            return Err(CliError::Config(format!(
                "{}:{}: invalid key {key:?}",
                path.display(),
                n + 1
            )));
        }
        entries.push((key.to_string(), value.trim().to_string()));
    }
    Ok(entries)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return iter.next().map(PathBuf::from);
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(rest));
        }
    }
    None
}

/// Inserts the config file's entries as `--key=value` right after the verb,
/// so that flags given on the command line, which come later, win.
pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let entries = parse_config(&text, &path)?;
    let verb_at = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(args.len());
    let mut out = args[..verb_at.min(args.len())].to_vec();
    out.extend(
        entries
            .into_iter()
            .map(|(k, v)| OsString::from(format!("--{k}={v}"))),
    );
    out.extend_from_slice(&args[verb_at.min(args.len())..]);
    Ok(out)
}
