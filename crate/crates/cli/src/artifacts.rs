//! Artifact files with a provenance manifest. CSV files start with a `#` line,
//! JSON files wrap their payload as `{"manifest": …, "data": …}`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub config_hash: String,
    pub kind: String,
    pub seed: u64,
}

impl Manifest {
    pub fn new(config_hash: String, kind: &str, seed: u64) -> Self {
        Manifest {
            tool: "pmshock".into(),
            version: TOOL_VERSION.into(),
            core_version: pmshock_core::VERSION.into(),
            config_hash,
            kind: kind.into(),
            seed,
        }
    }

    pub fn csv_header(&self) -> String {
        format!("# pmshock {} config_hash={} core={} kind={} seed={}", self.version, self.config_hash, self.core_version, self.kind, self.seed)
    }
}

#[derive(Serialize)]
struct Wrapped<'a, T: Serialize> {
    manifest: &'a Manifest,
    data: &'a T,
}

/// Writes every artifact of one experiment into its own directory.
pub struct ArtifactWriter {
    dir: PathBuf,
    manifest: Manifest,
    written: Vec<PathBuf>,
}

impl ArtifactWriter {
    pub fn create(dir: &Path, manifest: Manifest) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(ArtifactWriter { dir: dir.to_path_buf(), manifest, written: Vec::new() })
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// `body` writes the CSV table (header row first) after the manifest line.
    pub fn csv(&mut self, name: &str, body: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<PathBuf> {
        let mut buf = self.manifest.csv_header().into_bytes();
        buf.push(b'\n');
        body(&mut buf)?;
        self.put(name, &buf)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, data: &T) -> Result<PathBuf> {
        let mut buf = serde_json::to_vec_pretty(&Wrapped { manifest: &self.manifest, data })?;
        buf.push(b'\n');
        self.put(name, &buf)
    }

    fn put(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, bytes)?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}
