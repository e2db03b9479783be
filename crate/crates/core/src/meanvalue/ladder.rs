use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{count_j_with, estimate_cost, resolve_strategy, CountConfig, Strategy, SystemParams};
use crate::{Budget, Error, ExactInt, Result};

/// Exact counts behind the inequality `J_s(X)^t <= J_t(X)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolderReport {
    pub holds: bool,
    pub j_s: ExactInt,
    pub j_t: ExactInt,
}

/// Checks `J_s(X)^t <= J_t(X)^s` with both sides exact. `false` means an
/// engine bug, since the inequality follows from Hölder's inequality.
pub fn holder_check(params: &SystemParams, t: u32, strategy: Strategy, budget: Budget) -> Result<HolderReport> {
    if t < params.s {
        return Err(Error::InvalidParameter(format!("need t >= s, got t={t}, s={}", params.s)));
    }
    let tp = params.with_s(t)?;
    let config = CountConfig { budget, ..CountConfig::default() };
    budget.check(estimate_cost(params, resolve_strategy(params, strategy, &config)).saturating_add(estimate_cost(&tp, resolve_strategy(&tp, strategy, &config))))?;
    let j_s = count_j_with(params, strategy, &config)?.j;
    let j_t = count_j_with(&tp, strategy, &config)?.j;
    let holds = j_s.pow(t) <= j_t.pow(params.s);
    Ok(HolderReport { holds, j_s, j_t })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LadderRow {
    pub x: u64,
    pub j: ExactInt,
    pub log2_x: f64,
    pub log2_j: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ladder {
    pub k: u32,
    pub s: u32,
    pub rows: Vec<LadderRow>,
    /// Least-squares slope of `log J` against `log X`; `None` with fewer than two points.
    pub slope: Option<f64>,
}

impl Ladder {
    /// CSV with header `X,J,log2X,log2J`; `J` is exact decimal.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,J,log2X,log2J\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.x, r.j, r.log2_x, r.log2_j);
        }
        out
    }
}

pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Checks each ladder point against the budget before any counting starts,
/// naming the first infeasible `X`.
pub fn ladder_preflight(k: u32, s: u32, xs: &[u64], strategy: Strategy, config: &CountConfig) -> Result<Vec<SystemParams>> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("ladder X values must be strictly ascending".into()));
    }
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let p = SystemParams::new(k, s, x)?;
        let est = estimate_cost(&p, resolve_strategy(&p, strategy, config));
        if est > config.budget.0 {
            return Err(Error::LadderBudgetExceeded { x, estimated: est, budget: config.budget.0 });
        }
        out.push(p);
    }
    Ok(out)
}

pub fn ladder_from_counts(k: u32, s: u32, counts: Vec<(u64, ExactInt)>) -> Ladder {
    let rows: Vec<LadderRow> = counts
        .into_iter()
        .map(|(x, j)| LadderRow { x, log2_x: libm::log2(x as f64), log2_j: j.log2(), j })
        .collect();
    let slope = fit_slope(&rows.iter().map(|r| (r.log2_x, r.log2_j)).collect::<Vec<_>>());
    Ladder { k, s, rows, slope }
}

/// Exact `J_{s,k}(X)` along an ascending list of `X` with the fitted growth exponent.
pub fn scaling_ladder(k: u32, s: u32, xs: &[u64], strategy: Strategy, config: &CountConfig) -> Result<Ladder> {
    let points = ladder_preflight(k, s, xs, strategy, config)?;
    let mut counts = Vec::with_capacity(points.len());
    for p in points {
        counts.push((p.x, count_j_with(&p, strategy, config)?.j));
    }
    Ok(ladder_from_counts(k, s, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holder_examples() {
        let p = SystemParams::new(2, 1, 2).unwrap();
        let r = holder_check(&p, 2, Strategy::Auto, Budget::DEFAULT).unwrap();
        assert_eq!((r.j_s.clone(), r.j_t.clone()), (ExactInt::from(2), ExactInt::from(6)));
        assert!(r.holds);
        let p = SystemParams::new(3, 2, 3).unwrap();
        assert!(holder_check(&p, 3, Strategy::Auto, Budget::DEFAULT).unwrap().holds);
        let r = holder_check(&p, 2, Strategy::Auto, Budget::DEFAULT).unwrap();
        assert_eq!(r.j_s, r.j_t);
        assert!(r.holds);
    }

    #[test]
    fn linear_ladder_has_unit_slope() {
        let l = scaling_ladder(3, 1, &[8, 16, 32, 64], Strategy::Auto, &CountConfig::default()).unwrap();
        assert!((l.slope.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(l.rows[3].j, ExactInt::from(64));
        let csv = l.to_csv();
        assert!(csv.starts_with("X,J,log2X,log2J\n8,8,3,3\n"));
    }

    #[test]
    fn preflight_names_first_infeasible_point() {
        let config = CountConfig { budget: Budget(1000), ..CountConfig::default() };
        let err = scaling_ladder(3, 3, &[4, 8, 32, 64], Strategy::Direct, &config).unwrap_err();
        assert_eq!(err, Error::LadderBudgetExceeded { x: 32, estimated: 32768, budget: 1000 });
        assert!(scaling_ladder(3, 3, &[8, 4], Strategy::Direct, &config).is_err());
    }

    #[test]
    fn slope_of_exact_power() {
        let pts: Vec<(f64, f64)> = (1..5).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        assert!((fit_slope(&pts).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(fit_slope(&pts[..1]), None);
    }
}
