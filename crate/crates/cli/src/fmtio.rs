//! Deterministic file output: float formatting, RFC-4180 CSV fields, and
//! the hashed-manifest convention shared by all commands.

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// 17 significant digits: enough to round-trip any f64, and stable across
/// runs and thread counts.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    format!("{x:.16e}")
}

/// Optional value: empty field when absent.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// RFC-4180 quoting; numeric fields pass through untouched.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

/// Data-file manifest: every file a command writes is listed here with a
/// content hash. Timestamps and wall times live in a separate file so the
/// manifest itself is byte-reproducible.
#[derive(Serialize)]
pub struct Manifest<S: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub spec: S,
    pub files: BTreeMap<String, String>,
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<String> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(sha256_hex(bytes))
}

pub fn write_manifest<S: Serialize>(dir: &Path, manifest: &Manifest<S>) -> Result<()> {
    let body = serde_json::to_string_pretty(manifest)?;
    fs::write(dir.join("manifest.json"), body.as_bytes())
        .with_context(|| format!("writing manifest in {}", dir.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_roundtrips() {
        for x in [0.0, 1.0, -2.5, 1.0 / 3.0, 1e-300, 6.02e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
