//! Run configuration: parsed from flags or a JSON file, validated before any
//! computation starts.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use twedge::fredholm::{MAX_HERMITE_N, MAX_NODES, MIN_NODES};
use twedge::limits::TABLE_RANGE;
use twedge::mc_harness::{MatrixModel, MAX_N_ORTHOGONAL, MAX_N_UNITARY, MIN_DISTANCE_COUNT};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Limits,
    Expand,
    FiniteN,
    Mc,
    Validate,
    RateFit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    #[default]
    Goe,
    Gue,
}

/// Which assembly of the GOE n^{−2/3} coefficient to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GoeForm {
    #[default]
    Standard,
    Bracket,
}

/// `min:max:step`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl SRange {
    pub fn single(s: f64) -> Self {
        Self { min: s, max: s, step: 1.0 }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.step.is_finite()) {
            return Err(CliError::Config(format!("s-range {self} must be finite")));
        }
        if self.max < self.min {
            return Err(CliError::Config(format!("s-range {self} has max < min")));
        }
        if self.step <= 0.0 {
            return Err(CliError::Config(format!("s-range {self} needs a positive step")));
        }
        if (self.max - self.min) / self.step > 1e6 {
            return Err(CliError::Config(format!("s-range {self} has more than 10^6 points")));
        }
        Ok(())
    }

    /// min, min + step, … up to max (inclusive within 1e−9·step).
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.min + k as f64 * self.step).collect()
    }
}

impl fmt::Display for SRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}:{}:{}", self.min, self.max, self.step)
        }
    }
}

impl FromStr for SRange {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?} in s-range: {e}"));
        match parts.as_slice() {
            [one] => Ok(SRange::single(num(one)?)),
            [lo, hi, step] => Ok(SRange {
                min: num(lo)?,
                max: num(hi)?,
                step: num(step)?,
            }),
            _ => Err(format!("expected min:max:step or a single value, got {text:?}")),
        }
    }
}

/// Everything a run needs. Unused fields keep their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub s_range: SRange,
    pub n_list: Vec<usize>,
    pub c: f64,
    pub beta: u8,
    pub m: usize,
    pub count: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub ensemble: Ensemble,
    pub goe_form: GoeForm,
    pub model: MatrixModel,
    pub quick: bool,
    pub input: Option<PathBuf>,
    pub dump: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            s_range: SRange {
                min: TABLE_RANGE.0,
                max: TABLE_RANGE.1,
                step: twedge::limits::TABLE_STEP,
            },
            n_list: vec![100],
            c: 0.0,
            beta: 1,
            m: twedge::fredholm::DEFAULT_NODES,
            count: 100_000,
            seed: 1,
            output: None,
            format: Format::Csv,
            ensemble: Ensemble::Goe,
            goe_form: GoeForm::Standard,
            model: MatrixModel::Dense,
            quick: false,
            input: None,
            dump: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config JSON: {e}")))
    }

    fn needs_goe_n(&self) -> bool {
        match self.command {
            Command::FiniteN => true,
            Command::Expand => self.ensemble == Ensemble::Goe,
            _ => false,
        }
    }

    /// Rejects invalid combinations; runs no numerics.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(MIN_NODES..=MAX_NODES).contains(&self.m) {
            return bad(format!("m = {} outside {MIN_NODES}..={MAX_NODES}", self.m));
        }
        if !self.c.is_finite() {
            return bad("c must be finite".into());
        }
        if matches!(self.command, Command::Validate | Command::RateFit) {
            if self.command == Command::RateFit && self.input.is_none() {
                return bad("rate-fit needs --input".into());
            }
            return Ok(());
        }
        if self.command != Command::Limits {
            if self.n_list.is_empty() {
                return bad("--n needs at least one value".into());
            }
            if let Some(n) = self.n_list.iter().find(|&&n| n == 0) {
                return bad(format!("n = {n} must be positive"));
            }
            if self.n_list.iter().any(|&n| (n as f64) + self.c <= 0.0) {
                return bad(format!("every n + c must be positive (c = {})", self.c));
            }
        }
        if self.needs_goe_n() {
            if let Some(n) = self.n_list.iter().find(|&&n| n % 2 == 1) {
                return bad(format!("the GOE pipeline needs even n, got {n}"));
            }
        }
        if self.command != Command::Mc {
            self.s_range.validate()?;
        }
        match self.command {
            Command::Limits | Command::Expand => {
                let (lo, hi) = TABLE_RANGE;
                if self.s_range.min < lo || self.s_range.max > hi {
                    return bad(format!("s-range {} must lie within [{lo}, {hi}]", self.s_range));
                }
                if self.command == Command::Limits && self.s_range.points().len() < 4 {
                    return bad("limits needs at least 4 grid points".into());
                }
            }
            Command::FiniteN => {
                if let Some(n) = self.n_list.iter().find(|&&n| n > MAX_HERMITE_N) {
                    return bad(format!("finite-n supports n ≤ {MAX_HERMITE_N}, got {n}"));
                }
            }
            Command::Mc => {
                let limit = match self.beta {
                    1 => MAX_N_ORTHOGONAL,
                    2 => MAX_N_UNITARY,
                    b => return bad(format!("beta must be 1 or 2, got {b}")),
                };
                if let Some(n) = self.n_list.iter().find(|&&n| n > limit) {
                    return bad(format!("mc with beta = {} supports n ≤ {limit}, got {n}", self.beta));
                }
                if self.count < MIN_DISTANCE_COUNT {
                    return bad(format!("mc needs count ≥ {MIN_DISTANCE_COUNT}, got {}", self.count));
                }
                if self.dump.is_some() && self.n_list.len() != 1 {
                    return bad("--dump needs a single n".into());
                }
            }
            Command::Validate | Command::RateFit => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grammar() {
        let r: SRange = "-3:3:0.1".parse().unwrap();
        assert_eq!(r.points().len(), 61);
        assert_eq!("-1".parse::<SRange>().unwrap().points(), vec![-1.0]);
        assert!("1:2".parse::<SRange>().is_err());
        assert!("a:2:0.1".parse::<SRange>().is_err());
    }

    #[test]
    fn config_round_trips() {
        let mut c = RunConfig::new(Command::FiniteN);
        c.n_list = vec![20, 40];
        c.s_range = SRange::single(-1.0);
        c.output = Some("out.csv".into());
        c.model = MatrixModel::Tridiagonal;
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn invalid_combinations_rejected() {
        let mut c = RunConfig::new(Command::FiniteN);
        c.n_list = vec![21];
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Mc);
        c.beta = 3;
        assert!(c.validate().is_err());
        c.beta = 2;
        c.n_list = vec![1001];
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Expand);
        c.s_range = SRange { min: -9.0, max: 0.0, step: 0.1 };
        assert!(c.validate().is_err());
        c.s_range = SRange { min: 1.0, max: 0.0, step: 0.1 };
        assert!(c.validate().is_err());
        let c = RunConfig::new(Command::RateFit);
        assert!(c.validate().is_err());
    }
}
