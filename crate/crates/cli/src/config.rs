//! Run configuration from defaults, an optional key=value file and the environment.

use std::path::{Path, PathBuf};

use crate::error::CliError;

pub const CACHE_ENV: &str = "CFTKIT_CACHE_DIR";
const CACHE_ENV_ALT: &str = "CFTKit_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub order: usize,
    pub precision_bits: u32,
    pub cache_dir: PathBuf,
    pub output: OutputFormat,
    pub entry_bound: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 20,
            precision_bits: 128,
            cache_dir: default_cache_dir(),
            output: OutputFormat::Markdown,
            entry_bound: None,
        }
    }
}

fn default_cache_dir() -> PathBuf {
    for var in [CACHE_ENV, CACHE_ENV_ALT] {
        if let Some(dir) = std::env::var_os(var).filter(|v| !v.is_empty()) {
            return PathBuf::from(dir);
        }
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(dir).join("cftkit");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("cftkit");
    }
    std::env::temp_dir().join("cftkit-cache")
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected key=value", n + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::usage(format!("config line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let bad = || format!("invalid value `{value}` for {key}");
        match key {
            "order" => self.order = value.parse().map_err(|_| bad())?,
            "precision_bits" => self.precision_bits = value.parse().map_err(|_| bad())?,
            "cache_dir" => self.cache_dir = PathBuf::from(value),
            "output" => {
                self.output = match value {
                    "json" => OutputFormat::Json,
                    "markdown" => OutputFormat::Markdown,
                    _ => return Err(bad()),
                }
            }
            "entry_bound" | "enumeration_caps" => {
                self.entry_bound = match value {
                    "" | "none" => None,
                    v => Some(v.parse().map_err(|_| bad())?),
                }
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.order == 0 {
            return Err(CliError::usage("order must be at least 1"));
        }
        if self.precision_bits < 32 {
            return Err(CliError::usage("precision_bits must be at least 32"));
        }
        Ok(())
    }
}
