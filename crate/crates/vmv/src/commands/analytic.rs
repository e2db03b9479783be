use serde_json::{json, Value};
use vmv_core::analytic::{
    classify_arc, fractional_min_search, mean_value_constants, singular_series_mean_value, singular_series_waring,
    waring_counts_upto, Approximation, CoefficientVector, SeriesTruncation,
};

use super::{csv, exact, parse_rational, rational, Report};
use crate::args::{ConstantsArgs, FracMinArgs, MinorArcArgs, SeriesKind, SingularSeriesArgs, WaringCountArgs, WeylEvalArgs};
use crate::config::Settings;
use crate::error::{usage, Result};
use crate::parallel::eval_f_parallel;

fn coefficients(alpha: &[String], monomial: Option<usize>) -> Result<CoefficientVector> {
    let alphas = alpha.iter().map(|a| parse_rational(a)).collect::<Result<Vec<_>>>()?;
    match monomial {
        None => Ok(CoefficientVector::new(alphas)?),
        Some(k) if alphas.len() == 1 => Ok(CoefficientVector::monomial(alphas.into_iter().next().expect("one"), k)?),
        Some(_) => Err(usage("--monomial takes exactly one --alpha")),
    }
}

pub(super) fn weyl_eval(a: &WeylEvalArgs, s: &Settings) -> Result<Report> {
    let c = coefficients(&a.alpha, a.monomial)?;
    s.budget.check(a.x as u128)?;
    let v = eval_f_parallel(&c, a.x, s.threads)?;
    Ok(Report::json(json!({
        "k": c.k(),
        "X": a.x,
        "re": v.re,
        "im": v.im,
        "abs": v.norm(),
        "abs_over_x": v.norm() / a.x as f64,
    })))
}

fn approx_json(a: &Approximation) -> Value {
    json!({ "a": exact(&a.a), "q": exact(&a.q), "distance": rational(&a.distance) })
}

pub(super) fn minor_arc(a: &MinorArcArgs) -> Result<Report> {
    let c = classify_arc(&parse_rational(&a.alpha)?, a.k, a.x)?;
    Ok(Report::json(json!({
        "alpha": rational(&c.alpha),
        "verdict": c.verdict.name(),
        "witness": c.witness.as_ref().map(approx_json),
        "best": c.best.as_ref().map(approx_json),
        "q_limit": rational(&c.q_limit),
        "tolerance": rational(&c.tolerance),
    })))
}

pub(super) fn frac_min(a: &FracMinArgs, s: &Settings) -> Result<Report> {
    let c = coefficients(&a.alpha, None)?;
    let r = fractional_min_search(&c, a.n, s.budget)?;
    Ok(Report::json(json!({
        "n_star": r.n_star,
        "value": rational(&r.value),
        "value_f64": r.value.to_f64(),
        "reference": r.reference,
        "below_reference": r.below_reference,
    })))
}

pub(super) fn waring_count(a: &WaringCountArgs, s: &Settings) -> Result<Report> {
    let counts = waring_counts_upto(a.s, a.k, a.n, s.budget)?;
    if !a.all {
        return Ok(Report::json(json!({ "R": exact(counts.last().expect("n + 1 entries")) })));
    }
    let rows: Vec<Value> = counts.iter().enumerate().map(|(m, r)| json!({ "n": m, "R": exact(r) })).collect();
    let csv_rows = counts.iter().enumerate().map(|(m, r)| vec![m.to_string(), r.to_string()]);
    Ok(Report::table(json!({ "rows": rows }), csv("n,R", csv_rows)))
}

fn series_json(t: &SeriesTruncation) -> Value {
    json!({ "value": t.value, "imag": t.imag, "tail": t.tail, "q_max": t.q_max })
}

pub(super) fn singular_series(a: &SingularSeriesArgs, s: &Settings) -> Result<Report> {
    let t = match a.kind {
        SeriesKind::Waring => {
            let n = a.n.ok_or_else(|| usage("--kind waring needs --n"))?;
            singular_series_waring(a.s, a.k, n, a.q, s.budget)?
        }
        SeriesKind::MeanValue => singular_series_mean_value(a.s, a.k as usize, a.q, s.budget)?,
    };
    Ok(Report::json(series_json(&t)))
}

pub(super) fn constants(a: &ConstantsArgs, s: &Settings) -> Result<Report> {
    let c = mean_value_constants(a.s, a.k, a.q, a.b, a.grid, s.budget)?;
    let i = &c.singular_integral;
    let integral = i.richardson.unwrap_or(i.value);
    Ok(Report::json(json!({
        "singular_series": series_json(&c.singular_series),
        "singular_integral": {
            "value": i.value,
            "half_width": i.half_width,
            "cells_per_unit": i.cells_per_unit,
            "coarse": i.coarse,
            "richardson": i.richardson,
        },
        "product": c.singular_series.value * integral,
    })))
}
