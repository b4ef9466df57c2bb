use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use relieve_core::Result;

/// Provenance written next to (or inside) every artifact.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub dataset_hash: String,
    pub seed: u64,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, params: serde_json::Value, input: &[u8], seed: u64) -> Self {
        RunManifest {
            command: command.to_string(),
            params,
            dataset_hash: hex::encode(Sha256::digest(input)),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// File next to `path` with its extension replaced by `suffix`
/// (`data.csv` + `truth.json` -> `data.truth.json`).
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

/// Writes to `out` or prints to stdout.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
