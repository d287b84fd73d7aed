//! The versioned JSON wrapper around every report.
//!
//! An envelope carries the schema version, the kind of payload, an echo of the
//! configuration that produced it and a build id. Integers that may exceed
//! `2^53` are written as decimal strings (see [`dec`]). The creation time is
//! left out unless asked for, so identical runs produce identical bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::output::write_bytes;

pub const SCHEMA_VERSION: u32 = 1;

pub fn build_id() -> String {
    option_env!("ORBITLAB_BUILD_ID")
        .map(str::to_string)
        .unwrap_or_else(|| format!("orbitlab-{}", env!("CARGO_PKG_VERSION")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub kind: String,
    pub build: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_unix: Option<u64>,
    pub config: Value,
    pub payload: Value,
}

impl ResultEnvelope {
    pub fn new<C: Serialize, P: Serialize>(kind: &str, config: &C, payload: &P) -> Self {
        ResultEnvelope {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            build: build_id(),
            created_unix: None,
            config: serde_json::to_value(config).expect("config serializes"),
            payload: serde_json::to_value(payload).expect("payload serializes"),
        }
    }

    pub fn stamped(mut self) -> Self {
        self.created_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn emit(&self, path: &Path) -> Result<()> {
        write_bytes(path, self.to_json().as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|m| CliError::format(path, m))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        match value.get("schema_version").and_then(Value::as_u64) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => {
                return Err(format!(
                    "envelope schema version {v} is not supported (expected {SCHEMA_VERSION})"
                ))
            }
            None => return Err("missing envelope schema_version".into()),
        }
        serde_json::from_value(value).map_err(|e| e.to_string())
    }

    /// Decodes the payload as a concrete report type.
    pub fn payload_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T, String> {
        serde_json::from_value(self.payload.clone()).map_err(|e| e.to_string())
    }
}

/// Serde adapters writing integers as decimal strings.
pub mod dec {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// [`dec`] for lists.
pub mod dec_vec {
    use serde::Serializer;
    use std::fmt::Display;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }
}

/// [`dec`] for optional values.
pub mod dec_opt {
    use serde::Serializer;
    use std::fmt::Display;

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Big {
        #[serde(with = "dec")]
        n: u64,
        #[serde(with = "dec")]
        m: i64,
    }

    #[test]
    fn round_trip_and_big_integers() {
        let big = Big {
            n: u64::MAX,
            m: -(1 << 60),
        };
        let env = ResultEnvelope::new("test", &serde_json::json!({"x": "1"}), &big);
        let text = env.to_json();
        assert!(text.contains("\"18446744073709551615\""));
        assert!(!text.contains("created_unix"));
        let back = ResultEnvelope::parse(&text).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.payload_as::<Big>().unwrap(), big);
    }

    #[test]
    fn version_mismatch() {
        let mut env = ResultEnvelope::new("test", &(), &());
        env.schema_version = 9;
        let err = ResultEnvelope::parse(&env.to_json()).unwrap_err();
        assert!(err.contains("version 9"), "{err}");
        assert!(ResultEnvelope::parse("{}").unwrap_err().contains("schema_version"));
    }
}
