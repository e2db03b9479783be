//! One function per subcommand: arguments and settings in, a [`Report`] out.

mod analytic;
mod congruence;
mod counting;
mod exponents;

use std::ops::RangeInclusive;

use serde_json::{json, Value};
use vmv_core::meanvalue::{CountConfig, Strategy};
use vmv_core::{ExactInt, ExactRational};

use crate::args::{Command, KRangeArgs, StrategyArg};
use crate::config::Settings;
use crate::error::{usage, Result};

/// What a subcommand produced.
pub(crate) struct Report {
    pub json: Value,
    /// Present for tables and ladders.
    pub csv: Option<String>,
    pub strategy: Option<Strategy>,
    /// Extras for the manifest.
    pub details: Value,
}

impl Report {
    fn json(json: Value) -> Self {
        Report { json, csv: None, strategy: None, details: Value::Null }
    }

    fn table(json: Value, csv: String) -> Self {
        Report { json, csv: Some(csv), strategy: None, details: Value::Null }
    }
}

pub(crate) fn execute(cmd: &Command, s: &Settings) -> Result<Report> {
    match cmd {
        Command::CountJ(a) => counting::count_j(a, s),
        Command::CountRestricted(a) => counting::count_restricted(a, s),
        Command::Diagonal(a) => counting::diagonal(a, s),
        Command::Ladder(a) => counting::ladder(a, s),
        Command::CongruenceB(a) => congruence::congruence_b(a, s),
        Command::VerifyLemma(a) => congruence::verify_lemma(a, s),
        Command::Hensel(a) => congruence::hensel(a, s),
        Command::Lemma32(a) => congruence::lemma32(a),
        Command::Exponent(a) => exponents::exponent(a),
        Command::GtildeTable(a) => exponents::gtilde_table(a),
        Command::GtildePlus(a) => exponents::gtilde_plus(a),
        Command::Tarry(a) => exponents::tarry(a),
        Command::WeylEval(a) => analytic::weyl_eval(a, s),
        Command::MinorArc(a) => analytic::minor_arc(a),
        Command::FracMin(a) => analytic::frac_min(a, s),
        Command::WaringCount(a) => analytic::waring_count(a, s),
        Command::SingularSeries(a) => analytic::singular_series(a, s),
        Command::Constants(a) => analytic::constants(a, s),
        Command::Ledger(a) => exponents::ledger(a, s),
    }
}

/// Exact integers go out as decimal strings.
fn exact(v: &ExactInt) -> Value {
    Value::String(v.to_string())
}

fn rational(v: &ExactRational) -> Value {
    Value::String(v.to_string())
}

fn parse_rational(s: &str) -> Result<ExactRational> {
    s.trim().parse().map_err(|e: vmv_core::Error| usage(format!("{s:?} is not an integer or fraction n/d: {e}")))
}

fn parse_signs(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(usage(format!("sign pattern {s:?} may only contain '+' and '-'"))),
        })
        .collect()
}

fn signs(v: &[i8]) -> Value {
    json!(v.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect::<String>())
}

fn strategy_of(arg: Option<StrategyArg>, s: &Settings) -> Strategy {
    match arg {
        None => s.strategy,
        Some(StrategyArg::Auto) => Strategy::Auto,
        Some(StrategyArg::Direct) => Strategy::Direct,
        Some(StrategyArg::Symmetry) => Strategy::SymmetryReduced,
        Some(StrategyArg::Convolution) => Strategy::Convolution,
    }
}

fn count_config(s: &Settings) -> CountConfig {
    CountConfig { budget: s.budget, convolution_bias: s.convolution_bias }
}

fn k_range(a: &KRangeArgs) -> Result<RangeInclusive<u64>> {
    match (a.k, a.k_min, a.k_max) {
        (Some(k), _, _) => Ok(k..=k),
        (None, Some(lo), Some(hi)) if lo <= hi => Ok(lo..=hi),
        (None, Some(lo), Some(hi)) => Err(usage(format!("--k-min {lo} exceeds --k-max {hi}"))),
        _ => Err(usage("give --k or both --k-min and --k-max")),
    }
}

/// Joins CSV rows; fields never contain commas or quotes.
fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}
