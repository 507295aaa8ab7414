//! Run configuration from an optional `key = value` file.

use std::fmt;
use std::path::Path;

use dahalab::Mode;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json or text)")),
        }
    }
}

/// `exact`, or `spec`/`specialized` with a seed given separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeName {
    Exact,
    Specialized,
}

impl std::str::FromStr for ModeName {
    type Err = String;

    fn from_str(s: &str) -> Result<ModeName, String> {
        match s {
            "exact" => Ok(ModeName::Exact),
            "spec" | "specialized" => Ok(ModeName::Specialized),
            _ => Err(format!("unknown mode `{s}` (expected exact or spec)")),
        }
    }
}

/// Settings shared by every command. Fields left `None` fall back to the
/// command defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub mode: Option<ModeName>,
    pub seed: Option<u64>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    /// Comma-separated `a_{-l1}, …, a_{l2}`, or `sym`.
    pub a: Option<String>,
    pub format: Option<Format>,
    pub step_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.msg)
    }
}

fn num<T: std::str::FromStr>(v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("`{v}` is not a valid number"))
}

impl RunConfig {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError { line: i + 1, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "n" => c.n = Some(num(v).map_err(err)?),
                "mode" => c.mode = Some(v.parse().map_err(err)?),
                "seed" => c.seed = Some(num(v).map_err(err)?),
                "l1" => c.l1 = Some(num(v).map_err(err)?),
                "l2" => c.l2 = Some(num(v).map_err(err)?),
                "a" | "params" => c.a = Some(v.to_string()),
                "format" => c.format = Some(v.parse().map_err(err)?),
                "step_bound" => c.step_bound = Some(num(v).map_err(err)?),
                _ => return Err(err(format!("unknown key `{k}`"))),
            }
        }
        if c.n == Some(0) {
            return Err(ConfigError { line: 0, msg: "n must be at least 1".into() });
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        RunConfig::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn mode(&self) -> Mode {
        match self.mode.unwrap_or(ModeName::Exact) {
            ModeName::Exact => Mode::Exact,
            ModeName::Specialized => Mode::Specialized(self.seed.unwrap_or(0)),
        }
    }
}
