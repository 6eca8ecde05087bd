//! `key=value` parameter files accepted by every subcommand via `--config`.
//!
//! Blank lines and lines starting with `#` are skipped. Keys are flag names
//! without the leading dashes; `_` and `-` are interchangeable.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("config line {}: expected key=value", lineno + 1))
            })?;
            entries.insert(normalize(key.trim()), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    /// Fill `slot` from the file when the flag was not given.
    pub fn fill<T: FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<()>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_some() {
            return Ok(());
        }
        if let Some(raw) = self.entries.get(key) {
            let parsed = raw.parse::<T>().map_err(|e| {
                Error::InvalidParameter(format!("config key `{key}` = `{raw}`: {e}"))
            })?;
            *slot = Some(parsed);
        }
        Ok(())
    }

    /// Reject keys that no flag of the running subcommand consumes.
    pub fn check_known(&self, known: &[&str]) -> Result<()> {
        match self.entries.keys().find(|k| !known.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!("unknown config key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn normalize(key: &str) -> String {
    key.trim_start_matches('-').replace('_', "-").to_ascii_lowercase()
}
