//! Run configuration: defaults, then a key=value file, then command-line flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;

use crate::error::{Error, Result};
use crate::special::Caps;

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "CARLITZ_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub q: u32,
    /// Precision in w-units.
    pub prec: i64,
    pub tdeg: usize,
    pub degree_bound: usize,
    pub caps: Caps,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { q: 2, prec: 100, tdeg: 16, degree_bound: 6, caps: Caps::default(), format: Format::Text }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key} = {value:?} is not a valid number")))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "q" => self.q = parse_num(key, value)?,
            "prec" => self.prec = parse_num(key, value)?,
            "tdeg" => self.tdeg = parse_num(key, value)?,
            "deg" | "degree_bound" => self.degree_bound = parse_num(key, value)?,
            "max_monics" => self.caps.max_monics = parse_num(key, value)?,
            "at_max_tdeg" => self.caps.at_max_tdeg = parse_num(key, value)?,
            "at_checks" => self.caps.at_checks = parse_num(key, value)?,
            "format" => {
                self.format = Format::from_str(value.trim(), true).map_err(|_| Error::Config(format!("unknown format {value:?}")))?
            }
            other => return Err(Error::Config(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a configuration file: one `key = value` per line, `#` starts a comment.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value, got {raw:?}", lineno + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_file_contents(&text)
    }

    /// Applies `--caps max_monics=…,at_max_tdeg=…`.
    pub fn apply_caps(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Config(format!("bad cap {item:?}, expected name=value")))?;
            match k.trim() {
                "max_monics" | "at_max_tdeg" | "at_checks" => self.set(k, v)?,
                other => return Err(Error::Config(format!("unknown cap {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.prec < 1 {
            return Err(Error::Config(format!("precision must be at least 1, got {}", self.prec)));
        }
        if self.caps.max_monics == 0 || self.caps.at_checks == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        Ok(())
    }
}

/// The configuration file named by the flag, else by the environment, if any.
pub fn config_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}
