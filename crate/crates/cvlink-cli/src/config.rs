//! Optional key-value configuration file. Lines are `key = value`, with `#`
//! starting a comment; keys mirror the command-line flags. Precedence is
//! always flags over file over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

/// Keys a configuration file may set, matching the long flag names.
pub const KNOWN_KEYS: [&str; 9] = [
    "epsilon",
    "r",
    "kappa2",
    "tau",
    "t",
    "m-sites",
    "grid-eps",
    "grid-r",
    "asymptotic-time",
];

/// Raw string values from a config file, keyed by flag name.
#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    /// Parses a config file; unknown keys and malformed lines are usage
    /// errors so typos do not silently fall back to defaults.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!(
                    "config line {} is not of the form `key = value`: {raw:?}",
                    lineno + 1
                )
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(format!(
                    "unknown config key {key:?} on line {}; known keys: {}",
                    lineno + 1,
                    KNOWN_KEYS.join(", ")
                ));
            }
            if value.is_empty() {
                return Err(format!("config key {key:?} on line {} has no value", lineno + 1));
            }
            values.insert(key.to_string(), value.to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parses a config value as f64, naming the key on failure.
    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("config key {key:?} is not a number: {raw:?}")),
        }
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("config key {key:?} is not a count: {raw:?}")),
        }
    }
}

/// An inclusive 1-D parameter grid, parsed from `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    /// Log-spaced grids require positive bounds.
    pub log: bool,
}

impl GridSpec {
    /// Parses `lo:hi:n`; `flag` names the offending flag or config key in
    /// error messages.
    pub fn parse(spec: &str, log: bool, flag: &str) -> Result<Self, String> {
        let parts: Vec<&str> = spec.split(':').collect();
        let err = |what: &str| format!("invalid value for {flag}: {what} (expected lo:hi:n, got {spec:?})");
        if parts.len() != 3 {
            return Err(err("need exactly three `:`-separated fields"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| err("lo is not a number"))?;
        let hi: f64 = parts[1].parse().map_err(|_| err("hi is not a number"))?;
        let n: usize = parts[2].parse().map_err(|_| err("n is not a count"))?;
        let grid = Self { lo, hi, n, log };
        grid.validate(flag)?;
        Ok(grid)
    }

    pub fn validate(&self, flag: &str) -> Result<(), String> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(format!("invalid value for {flag}: bounds must be finite"));
        }
        if self.n == 0 {
            return Err(format!("invalid value for {flag}: n must be at least 1"));
        }
        if self.lo > self.hi {
            return Err(format!("invalid value for {flag}: lo must not exceed hi"));
        }
        if self.log && self.lo <= 0.0 {
            return Err(format!(
                "invalid value for {flag}: log-spaced grid needs lo > 0"
            ));
        }
        Ok(())
    }

    /// The grid points, low to high inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let steps = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                let frac = i as f64 / steps;
                if self.log {
                    (self.lo.ln() + frac * (self.hi.ln() - self.lo.ln())).exp()
                } else {
                    self.lo + frac * (self.hi - self.lo)
                }
            })
            .collect()
    }
}
