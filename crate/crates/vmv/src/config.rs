//! `vmv.toml` discovery and the merge of file values with command-line flags.
//!
//! Lookup order: `--config PATH`, then `$VMV_CONFIG`, then `./vmv.toml`.
//! A flag always wins over the file, and the file over built-in defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vmv_core::meanvalue::Strategy;
use vmv_core::Budget;

use crate::args::{Format, GlobalArgs};
use crate::error::{CliError, Result};

pub const CONFIG_FILE: &str = "vmv.toml";
pub const CONFIG_ENV: &str = "VMV_CONFIG";
pub const DEFAULT_OUT_DIR: &str = "vmv-out";

/// Keys accepted in `vmv.toml`. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    /// Integer or string such as `"5e8"`.
    pub budget: Option<BudgetValue>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out_dir: Option<PathBuf>,
    pub strategy: Option<String>,
    pub convolution_bias: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum BudgetValue {
    Int(u64),
    Text(String),
}

/// Effective settings for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub budget: Budget,
    pub threads: usize,
    pub seed: u64,
    pub format: Format,
    pub out_dir: PathBuf,
    pub strategy: Strategy,
    pub convolution_bias: f64,
    pub config_path: Option<PathBuf>,
}

/// Accepts plain integers, `_` separators and `<mantissa>e<exp>` with an
/// integral value, e.g. `500000000`, `5e8`, `2.5e7`.
pub fn parse_budget(s: &str) -> std::result::Result<u128, String> {
    let t = s.trim().replace('_', "");
    if let Ok(v) = t.parse::<u128>() {
        return Ok(v);
    }
    let bad = || format!("not a budget: {s:?} (use an integer or e.g. 5e8)");
    let (mant, exp) = t.split_once(['e', 'E']).ok_or_else(bad)?;
    let exp: u32 = exp.parse().map_err(|_| bad())?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let shift = exp.checked_sub(frac.len() as u32).ok_or_else(bad)?;
    let base: u128 = digits.parse().map_err(|_| bad())?;
    10u128.checked_pow(shift).and_then(|p| base.checked_mul(p)).ok_or_else(bad)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

fn locate(explicit: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CONFIG_ENV) {
        return Some(PathBuf::from(p));
    }
    let local = PathBuf::from(CONFIG_FILE);
    local.is_file().then_some(local)
}

pub fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    toml::from_str(&text).map_err(|e| CliError::Config { path: path.to_path_buf(), message: e.to_string() })
}

pub fn resolve(global: &GlobalArgs) -> Result<Settings> {
    let config_path = locate(global.config.as_deref());
    let file = match &config_path {
        Some(p) => load_file(p)?,
        None => FileConfig::default(),
    };
    let cfg_err = |message: String| CliError::Config { path: config_path.clone().unwrap_or_default(), message };

    let budget = match (global.budget, &file.budget) {
        (Some(b), _) => b,
        (None, Some(BudgetValue::Int(v))) => *v as u128,
        (None, Some(BudgetValue::Text(t))) => parse_budget(t).map_err(cfg_err)?,
        (None, None) => Budget::DEFAULT.0,
    };
    let strategy = match &file.strategy {
        Some(s) => Strategy::parse(s).ok_or_else(|| cfg_err(format!("unknown strategy {s:?}")))?,
        None => Strategy::Auto,
    };
    let threads = global.threads.or(file.threads).unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let convolution_bias = file.convolution_bias.unwrap_or(1.0);
    if !(convolution_bias.is_finite() && convolution_bias > 0.0) {
        return Err(cfg_err(format!("convolution-bias must be positive, got {convolution_bias}")));
    }
    Ok(Settings {
        budget: Budget(budget),
        threads,
        seed: global.seed.or(file.seed).unwrap_or(0),
        format: global.format.or(file.format).unwrap_or(Format::Json),
        out_dir: global.out_dir.clone().or(file.out_dir).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
        strategy,
        convolution_bias,
        config_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("500000000"), Ok(500_000_000));
        assert_eq!(parse_budget("5e8"), Ok(500_000_000));
        assert_eq!(parse_budget("2.5E7"), Ok(25_000_000));
        assert_eq!(parse_budget("1_000"), Ok(1000));
        assert!(parse_budget("1.25e1").is_err());
        assert!(parse_budget("lots").is_err());
        assert!(parse_budget("e5").is_err());
    }

    #[test]
    fn file_values_and_flag_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vmv.toml");
        std::fs::write(&path, "budget = \"2e6\"\nthreads = 3\nseed = 9\nformat = \"csv\"\nstrategy = \"direct\"\n").unwrap();
        let mut g = GlobalArgs { config: Some(path.clone()), ..GlobalArgs::default() };
        let s = resolve(&g).unwrap();
        assert_eq!((s.budget, s.threads, s.seed, s.format, s.strategy), (Budget(2_000_000), 3, 9, Format::Csv, Strategy::Direct));
        g.budget = Some(7);
        g.threads = Some(1);
        g.format = Some(Format::Json);
        let s = resolve(&g).unwrap();
        assert_eq!((s.budget, s.threads, s.seed, s.format), (Budget(7), 1, 9, Format::Json));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vmv.toml");
        std::fs::write(&path, "budgett = 5\n").unwrap();
        let g = GlobalArgs { config: Some(path), ..GlobalArgs::default() };
        assert!(matches!(resolve(&g), Err(CliError::Config { .. })));
    }
}
