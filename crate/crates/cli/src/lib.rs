//! Command-line harness: argument parsing, configuration, JSON envelopes
//! and the results cache around the `brauer-core` operations.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod envelope;
pub mod scan;

use std::time::Instant;

use brauer_core::Error;
use serde_json::json;

pub use args::{Cli, Command};
use cache::ResultsCache;
use config::{ConfigError, RunConfig};
use envelope::Envelope;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("results cache: {0}")]
    Cache(#[from] std::io::Error),
}

impl CliError {
    /// 1 for a computation that ran and found a violation, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::CongruenceViolation { .. }
                | Error::IdentityViolation { .. }
                | Error::DivisibilityViolation { .. }
                | Error::Consistency(_)
                | Error::Structural(_)
                | Error::NotIntegral(_) => 1,
                Error::Domain(_)
                | Error::Unsupported(_)
                | Error::InsufficientPrecision { .. }
                | Error::PrecisionOverflow { .. }
                | Error::TooLarge { .. } => 2,
            },
            CliError::Config(_) => 2,
            CliError::Cache(_) => 1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Core(_) => "computation",
            CliError::Config(_) => "config",
            CliError::Cache(_) => "cache",
        };
        json!({ "error": kind, "message": self.to_string(), "exit_code": self.exit_code() })
    }
}

/// An envelope plus the verdict that decides the exit code.
pub struct Run {
    pub envelope: Envelope,
    pub failure: Option<String>,
}

impl Run {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failure.is_some())
    }
}

/// Configuration after the file and the command-line overrides are merged.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.precision {
        cfg.precision = v;
    }
    if let Some(v) = cli.cutoff {
        cfg.cutoff = v;
    }
    if let Some(v) = cli.s_max {
        cfg.s_max = v;
    }
    if let Some(v) = cli.mu_max {
        cfg.mu_max = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.cache_dir {
        cfg.cache_dir = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: &Cli) -> Result<Run, CliError> {
    let cfg = resolve_config(cli)?;
    let started = Instant::now();
    let command = cli.command.name();
    let params = json!({
        "args": cli.command,
        "precision": cfg.precision,
        "cutoff": cfg.cutoff,
        "s_max": cfg.s_max,
        "mu_max": cfg.mu_max,
    });
    let cache = match cfg.effective_cache_dir() {
        Some(dir) if !cli.no_cache => Some(ResultsCache::open(&dir)?),
        _ => None,
    };
    let key = ResultsCache::key(command, &params, cfg.seed);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        if let Some(mut envelope) = Envelope::from_body(&hit) {
            envelope.meta.cached = true;
            envelope.meta.elapsed_ms = started.elapsed().as_millis();
            return Ok(Run {
                envelope,
                failure: None,
            });
        }
    }
    let outcome = commands::execute(&cli.command, &cfg)?;
    let mut envelope = Envelope::new(command, params, cfg.seed, outcome.result, outcome.evidence);
    envelope.meta.elapsed_ms = started.elapsed().as_millis();
    if let (Some(cache), None) = (&cache, &outcome.failure) {
        cache.put(&key, &envelope.body())?;
    }
    Ok(Run {
        envelope,
        failure: outcome.failure,
    })
}
