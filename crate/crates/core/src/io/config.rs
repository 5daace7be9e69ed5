//! Flat `key = value` config with `[section]` headers.
//!
//! Lookups in a section fall back to the keys that precede any header.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut current = String::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| Error::Config(format!("line {}: unterminated section header", no + 1)))?;
                current = name.trim().to_string();
                cfg.sections.entry(current.clone()).or_default();
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", no + 1)));
            }
            cfg.sections.entry(current.clone()).or_default().insert(k.to_string(), v.trim().to_string());
        }
        Ok(cfg)
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File { path: path.display().to_string(), source })?;
        text.parse()
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .or_else(|| self.sections.get("").and_then(|s| s.get(key)))
            .map(String::as_str)
    }

    pub fn parse<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(section, key)
            .map(|v| v.parse::<T>().map_err(|e| Error::Config(format!("[{section}] {key} = {v}: {e}"))))
            .transpose()
    }

    /// Comma-separated list.
    pub fn list<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(section, key)
            .map(|v| parse_list(v).map_err(|e| Error::Config(format!("[{section}] {key}: {e}"))))
            .transpose()
    }
}

/// Parses `a,b,c` into a vector.
pub fn parse_list<T: FromStr>(v: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| s.parse::<T>().map_err(|e| format!("{s}: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "out = results\nalpha = 1\n\n[thinfilm]\nalpha = 1, 5, 10 # damping\ndt_ps = 0.1\n[domainwall]\ngrid = 128,64,4\n";

    #[test]
    fn sections_and_fallback() {
        let c: Config = TEXT.parse().unwrap();
        assert_eq!(c.get("thinfilm", "out"), Some("results"));
        assert_eq!(c.list::<f64>("thinfilm", "alpha").unwrap(), Some(vec![1.0, 5.0, 10.0]));
        assert_eq!(c.parse::<f64>("domainwall", "alpha").unwrap(), Some(1.0));
        assert_eq!(c.list::<usize>("domainwall", "grid").unwrap(), Some(vec![128, 64, 4]));
        assert_eq!(c.parse::<f64>("domainwall", "missing").unwrap(), None);
        assert!(c.parse::<usize>("thinfilm", "dt_ps").is_err());
    }

    #[test]
    fn malformed_lines_rejected() {
        assert!("[open".parse::<Config>().is_err());
        assert!("novalue".parse::<Config>().is_err());
        assert!(" = 3".parse::<Config>().is_err());
    }
}
