//! Run configuration: caps, tolerances, seed, and output format, loadable
//! from a `key = value` file and overridable by flags.

use serde::Serialize;

use optseq::criteria::VerdictRules;
use optseq::optimal::SearchConfig;
use optseq::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n_cap: u32,
    pub m_cap: u64,
    pub l_cap: u64,
    pub l_max: usize,
    pub k_max: usize,
    pub grid: usize,
    pub enumeration_cap: usize,
    pub bisection_tol: f64,
    pub optimizer_tol: f64,
    pub verdict_tol: f64,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_cap: 14,
            m_cap: 1 << 12,
            l_cap: 1 << 12,
            l_max: 6,
            k_max: 3,
            grid: 200,
            enumeration_cap: 24,
            bisection_tol: 1e-12,
            optimizer_tol: 1e-7,
            verdict_tol: 0.05,
            seed: 0xa57a,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_cap < 1 || self.m_cap < 1 || self.l_cap < 1 || self.l_max < 1 {
            return Err(Error::invalid("all caps must be >= 1"));
        }
        if self.k_max < 1 || self.grid < 1 || self.enumeration_cap < 1 {
            return Err(Error::invalid("all caps must be >= 1"));
        }
        for (name, tol) in [
            ("bisection", self.bisection_tol),
            ("optimizer", self.optimizer_tol),
            ("verdict", self.verdict_tol),
        ] {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Error::invalid(format!(
                    "{name} tolerance must lie in (0, 1), got {tol}"
                )));
            }
        }
        Ok(())
    }

    /// Apply one `key = value` assignment; used by both the config file and
    /// the `--caps` flag.
    pub fn assign(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str, v: &str| Error::invalid(format!("bad {what} value `{v}`"));
        match key {
            "n_cap" => self.n_cap = value.parse().map_err(|_| bad(key, value))?,
            "m_cap" => self.m_cap = value.parse().map_err(|_| bad(key, value))?,
            "l_cap" => self.l_cap = value.parse().map_err(|_| bad(key, value))?,
            "l_max" => self.l_max = value.parse().map_err(|_| bad(key, value))?,
            "k_max" => self.k_max = value.parse().map_err(|_| bad(key, value))?,
            "grid" => self.grid = value.parse().map_err(|_| bad(key, value))?,
            "enumeration_cap" => {
                self.enumeration_cap = value.parse().map_err(|_| bad(key, value))?
            }
            "bisection_tol" => self.bisection_tol = value.parse().map_err(|_| bad(key, value))?,
            "optimizer_tol" => self.optimizer_tol = value.parse().map_err(|_| bad(key, value))?,
            "verdict_tol" => self.verdict_tol = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "format" => {
                self.format = match value {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    other => return Err(Error::invalid(format!("unknown format `{other}`"))),
                }
            }
            other => return Err(Error::invalid(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Parse a config file: one `key = value` per line, `#` comments.
    pub fn load_file(&mut self, text: &str) -> Result<()> {
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key = value, got `{line}`")))?;
            self.assign(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn search_config(&self) -> SearchConfig {
        let mut s = SearchConfig::with_seed(self.seed);
        s.l_max = self.l_max;
        s.k_max = self.k_max;
        s.enumeration_cap = self.enumeration_cap;
        s.tol = self.optimizer_tol;
        s
    }

    pub fn verdict_rules(&self) -> VerdictRules {
        VerdictRules {
            rel_tol: self.verdict_tol,
            ..VerdictRules::default()
        }
    }
}
