use std::path::{Path, PathBuf};

use serde::Serialize;

/// Environment variable that overrides the results-cache directory.
pub const CACHE_ENV: &str = "BRAUER_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub precision: u32,
    pub cutoff: usize,
    pub s_max: u32,
    pub mu_max: u64,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 4,
            cutoff: 12,
            s_max: 3,
            mu_max: 3,
            cache_dir: None,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error("line {line}: expected key = value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error("bad value {value:?} for {key}")]
    BadValue { key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

impl RunConfig {
    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e))?;
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.to_string(),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "precision" => self.precision = value.parse().map_err(|_| bad())?,
            "cutoff" => self.cutoff = value.parse().map_err(|_| bad())?,
            "s_max" => self.s_max = value.parse().map_err(|_| bad())?,
            "mu_max" => self.mu_max = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "cache_dir" => {
                self.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value));
            }
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.precision < 2 {
            return Err(ConfigError::Invalid(format!(
                "precision must be at least 2, got {}",
                self.precision
            )));
        }
        if self.cutoff < 8 {
            return Err(ConfigError::Invalid(format!(
                "degree cutoff must be at least 8, got {}",
                self.cutoff
            )));
        }
        Ok(())
    }

    /// The cache directory after applying the environment override.
    pub fn effective_cache_dir(&self) -> Option<PathBuf> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
            _ => self.cache_dir.clone(),
        }
    }
}
