use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::RunConfig;
use crate::Result;

/// Hash and echo of the effective configuration, embedded in every output file.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub subcommand: &'static str,
    pub config_sha256: String,
    pub config: RunConfig,
}

impl Provenance {
    pub fn new(subcommand: &'static str, config: &RunConfig) -> Result<Self> {
        Ok(Provenance { subcommand, config_sha256: config_hash(config)?, config: config.clone() })
    }
}

/// SHA-256 of the compact JSON serialisation of the configuration.
pub fn config_hash(config: &RunConfig) -> Result<String> {
    let text = serde_json::to_string(config)?;
    let digest = Sha256::digest(text.as_bytes());
    Ok(digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    }))
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    #[serde(flatten)]
    provenance: &'a Provenance,
    data: &'a T,
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, provenance: &Provenance, data: &T) -> Result<PathBuf> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(&Document { provenance, data })?;
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Formats a value for CSV; non-finite values become `nan`.
fn cell(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "nan".into()
    }
}

/// Comment lines with the provenance, one header line with units, one row per point.
pub fn write_csv(
    dir: &Path,
    name: &str,
    provenance: &Provenance,
    header: &[String],
    rows: &[Vec<f64>],
) -> Result<PathBuf> {
    let path = dir.join(name);
    let mut text = String::new();
    let _ = writeln!(text, "# nvlevels {}", provenance.subcommand);
    let _ = writeln!(text, "# config_sha256: {}", provenance.config_sha256);
    let _ = writeln!(text, "# config: {}", serde_json::to_string(&provenance.config)?);
    let _ = writeln!(text, "{}", header.join(","));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| cell(*v)).collect();
        let _ = writeln!(text, "{}", cells.join(","));
    }
    std::fs::write(&path, text)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_tracks_the_config() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.quadrature.seed += 1;
        let ha = config_hash(&a).unwrap();
        assert_eq!(ha.len(), 64);
        assert_eq!(ha, config_hash(&a).unwrap());
        assert_ne!(ha, config_hash(&b).unwrap());
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let p = Provenance::new("test", &RunConfig::default()).unwrap();
        let path = write_csv(dir.path(), "t.csv", &p, &["x".into(), "y".into()], &[vec![1.0, f64::NAN]]).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[1].starts_with("# config_sha256: "));
        assert_eq!(lines[3], "x,y");
        assert_eq!(lines[4], "1,nan");
    }
}
