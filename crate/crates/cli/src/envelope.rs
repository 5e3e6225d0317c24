use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// One output document. Everything except `meta` is a pure function of
/// the command, its parameters and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema: u32,
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub result: Value,
    pub evidence: Value,
    pub meta: Meta,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub timestamp_unix: u64,
    pub elapsed_ms: u128,
    pub cached: bool,
}

impl Envelope {
    pub fn new(command: &str, params: Value, seed: u64, result: Value, evidence: Value) -> Self {
        Envelope {
            schema: SCHEMA,
            command: command.to_string(),
            params,
            seed,
            result,
            evidence,
            meta: Meta {
                timestamp_unix: std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
                elapsed_ms: 0,
                cached: false,
            },
        }
    }

    /// The reproducible part of the document.
    pub fn body(&self) -> Value {
        json!({
            "schema": self.schema,
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "result": self.result,
            "evidence": self.evidence,
        })
    }
}

impl Envelope {
    /// Rebuilds an envelope from a stored body, with fresh metadata.
    pub fn from_body(body: &Value) -> Option<Self> {
        Some(Envelope {
            schema: body.get("schema")?.as_u64()? as u32,
            command: body.get("command")?.as_str()?.to_string(),
            params: body.get("params")?.clone(),
            seed: body.get("seed")?.as_u64()?,
            result: body.get("result")?.clone(),
            evidence: body.get("evidence")?.clone(),
            meta: Envelope::new("", Value::Null, 0, Value::Null, Value::Null).meta,
        })
    }
}
