use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::envelope::SCHEMA;

/// Content-addressed store of command results: one JSON file per key.
#[derive(Clone, Debug)]
pub struct ResultsCache {
    dir: PathBuf,
}

/// Hex SHA-256 of a JSON value in its canonical serialization.
pub fn content_hash(value: &Value) -> String {
    let bytes = serde_json::to_vec(value).expect("JSON values serialize");
    format!("{:x}", Sha256::digest(&bytes))
}

impl ResultsCache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(ResultsCache {
            dir: dir.to_path_buf(),
        })
    }

    /// Key over everything a result depends on.
    pub fn key(command: &str, params: &Value, seed: u64) -> String {
        content_hash(&serde_json::json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "params": params,
            "seed": seed,
        }))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put(&self, key: &str, body: &Value) -> std::io::Result<()> {
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(body)?)?;
        fs::rename(tmp, self.path(key))
    }
}
