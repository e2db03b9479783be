use serde_json::{json, Value};
use vmv_core::exponents::{
    corollary17_table, delta, envelope_with, gtilde, gtilde_plus as gtilde_plus_bound, ledger_replay, misc_exponents, nu,
    quasi_diagonal_r_max, tarry as tarry_bound, BoundFamily, ExponentBound, HChoices, KappaMode, LedgerTrace,
};
use vmv_core::ExactInt;

use super::{csv, exact, k_range, rational, Report};
use crate::args::{ExponentArgs, FamilyArg, KRangeArgs, LedgerArgs, LedgerModeArg};
use crate::config::Settings;
use crate::error::{usage, Result};
use crate::parallel::par_map;

fn bound_json(b: &ExponentBound) -> Value {
    json!({
        "exponent": rational(&b.exponent),
        "value": b.exponent.to_f64(),
        "source": b.source.to_string(),
        "kind": b.kind.name(),
        "valid_s_range": b.valid_s_range.to_string(),
    })
}

fn or_error<T>(r: vmv_core::Result<T>, f: impl Fn(&T) -> Value) -> Value {
    match r {
        Ok(v) => f(&v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn family_of(f: FamilyArg) -> BoundFamily {
    match f {
        FamilyArg::OptimalRange => BoundFamily::OptimalRange,
        FamilyArg::NearOptimal => BoundFamily::NearOptimal,
        FamilyArg::QuasiDiagonal => BoundFamily::QuasiDiagonal,
        FamilyArg::QuasiDiagonalUniform => BoundFamily::QuasiDiagonalUniform,
        FamilyArg::Holder => BoundFamily::Holder,
    }
}

pub(super) fn exponent(a: &ExponentArgs) -> Result<Report> {
    let k = a.k;
    if !(1..=1_000_000).contains(&k) {
        return Err(usage(format!("k = {k} outside [1, 1000000]")));
    }
    let deltas: Vec<Value> = (1..k)
        .filter_map(|t| delta(t, k).ok())
        .map(|b| json!({ "t": t_of(&b), "delta": rational(&b.exponent), "valid_s_range": b.valid_s_range.to_string() }))
        .collect();
    let nus: Vec<Value> = (1..=quasi_diagonal_r_max(k))
        .filter_map(|r| nu(r, k).ok().map(|b| (r, b)))
        .map(|(r, b)| json!({ "r": r, "nu": rational(&b.exponent), "valid_s_range": b.valid_s_range.to_string() }))
        .collect();
    let m = misc_exponents(k);
    let mut out = json!({
        "k": k,
        "delta": deltas,
        "nu": nus,
        "misc": {
            "sigma": or_error(m.sigma, bound_json),
            "tau": or_error(m.tau, bound_json),
            "tarry": or_error(m.tarry, |t| json!({ "t_star": t.t_star, "bound": t.bound, "statement_bound": t.statement_bound() })),
            "C_k": or_error(m.c_k, bound_json),
            "S_k": or_error(m.s_k, bound_json),
        },
    });
    let Some(s) = a.s else {
        return Ok(Report::json(out));
    };
    let families: Vec<BoundFamily> =
        if a.families.is_empty() { BoundFamily::ALL.to_vec() } else { a.families.iter().map(|f| family_of(*f)).collect() };
    let env = envelope_with(k, s, &families)?;
    let bounds: Vec<Value> = env
        .bounds
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut v = bound_json(b);
            v["minimal"] = json!(env.is_minimal(i));
            v
        })
        .collect();
    out["envelope"] = json!({ "s": s, "minimum": bound_json(env.minimum()), "bounds": bounds });
    let rows = env.bounds.iter().enumerate().map(|(i, b)| {
        vec![
            b.source.to_string(),
            b.exponent.to_string(),
            b.exponent.to_f64().to_string(),
            b.valid_s_range.to_string().replace(", ", ".."),
            env.is_minimal(i).to_string(),
        ]
    });
    Ok(Report::table(out, csv("source,exponent,value,valid_s_range,minimal", rows)))
}

fn t_of(b: &ExponentBound) -> u64 {
    match b.source {
        vmv_core::exponents::BoundSource::NearOptimal { t } => t,
        _ => unreachable!("delta always reports its t"),
    }
}

fn provenance(p: &[vmv_core::exponents::GtildeFormula]) -> String {
    p.iter().map(|f| f.name()).collect::<Vec<_>>().join(";")
}

pub(super) fn gtilde_table(a: &KRangeArgs) -> Result<Report> {
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for k in k_range(a)? {
        let g = gtilde(k)?;
        let cor = (k >= 6).then(|| corollary17_table(k)).transpose()?;
        rows.push(json!({
            "k": k,
            "gtilde": g.bound,
            "dyadic": g.dyadic.bound,
            "dyadic_maximizers": g.dyadic.maximizers,
            "near_optimal": g.near_optimal.bound,
            "near_optimal_maximizers": g.near_optimal.maximizers.iter().map(|(m, t)| json!({ "m": m, "t": t })).collect::<Vec<_>>(),
            "provenance": g.provenance.iter().map(|f| f.name()).collect::<Vec<_>>(),
            "s1": rational(&g.s1),
            "s1_integral": g.s1_integral,
            "theta": cor.as_ref().map(|c| c.theta),
            "closed_form": cor.as_ref().map(|c| c.bound),
            "consistent": cor.as_ref().map(|c| c.consistent),
        }));
        csv_rows.push(vec![
            k.to_string(),
            g.bound.to_string(),
            g.dyadic.bound.to_string(),
            g.near_optimal.bound.to_string(),
            provenance(&g.provenance),
            g.s1.to_string(),
            cor.as_ref().map_or(String::new(), |c| c.theta.to_string()),
            cor.as_ref().map_or(String::new(), |c| c.bound.to_string()),
            cor.as_ref().map_or(String::new(), |c| c.consistent.to_string()),
        ]);
    }
    Ok(Report::table(
        json!({ "rows": rows }),
        csv("k,gtilde,dyadic,near_optimal,provenance,s1,theta,closed_form,consistent", csv_rows),
    ))
}

pub(super) fn gtilde_plus(a: &KRangeArgs) -> Result<Report> {
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for k in k_range(a)? {
        let g = gtilde_plus_bound(k)?;
        rows.push(json!({
            "k": k,
            "gtilde_plus": g.bound,
            "dyadic": g.dyadic.bound,
            "near_optimal": g.near_optimal.bound,
            "provenance": g.provenance.iter().map(|f| f.name()).collect::<Vec<_>>(),
        }));
        csv_rows.push(vec![
            k.to_string(),
            g.bound.to_string(),
            g.dyadic.bound.to_string(),
            g.near_optimal.bound.to_string(),
            provenance(&g.provenance),
        ]);
    }
    Ok(Report::table(json!({ "rows": rows }), csv("k,gtilde_plus,dyadic,near_optimal,provenance", csv_rows)))
}

pub(super) fn tarry(a: &KRangeArgs) -> Result<Report> {
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for k in k_range(a)? {
        let t = tarry_bound(k)?;
        rows.push(json!({ "k": k, "t_star": t.t_star, "bound": t.bound, "statement_bound": t.statement_bound() }));
        csv_rows.push(vec![k.to_string(), t.t_star.to_string(), t.bound.to_string(), t.statement_bound().to_string()]);
    }
    Ok(Report::table(json!({ "rows": rows }), csv("k,t_star,bound,statement_bound", csv_rows)))
}

fn trace_json(t: &LedgerTrace) -> Value {
    let p = &t.params;
    json!({
        "params": {
            "k": p.k, "r": p.r, "mode": p.mode.name(), "base": p.base, "s": p.s,
            "kappa": rational(&p.kappa), "theta_sq": rational(&p.theta_sq), "theta": p.theta,
            "steps": p.steps, "h_minus1": p.h_minus1,
        },
        "states": t.states.iter().map(|s| json!({
            "n": s.n, "a": exact(&s.a), "b": exact(&s.b), "h": s.h.as_ref().map(exact),
            "psi": rational(&s.psi), "c": rational(&s.c), "gamma": rational(&s.gamma),
        })).collect::<Vec<_>>(),
        "checks": t.checks.iter().map(|c| json!({
            "n": c.n, "name": c.name, "lhs": rational(&c.lhs), "rhs": rational(&c.rhs),
            "holds": c.holds, "enforced": c.enforced,
        })).collect::<Vec<_>>(),
        "all_pass": t.all_pass(),
    })
}

pub(super) fn ledger(a: &LedgerArgs, s: &Settings) -> Result<Report> {
    let mode = match a.mode {
        LedgerModeArg::QuasiDiagonal => KappaMode::QuasiDiagonal,
        LedgerModeArg::NearOptimal => KappaMode::NearOptimal,
    };
    if a.random && a.runs > 1 {
        let seeds: Vec<u64> = (0..a.runs).map(|i| s.seed.wrapping_add(i)).collect();
        let traces = par_map(&seeds, s.threads, |&seed| ledger_replay(a.k, a.r, mode, a.steps, &HChoices::Random { seed }));
        let mut failures = Vec::new();
        let mut passed = 0u64;
        for (seed, t) in seeds.iter().zip(traces) {
            let t = t?;
            if t.all_pass() {
                passed += 1;
            }
            for c in t.failures() {
                failures.push(json!({ "seed": seed, "n": c.n, "check": c.name, "lhs": rational(&c.lhs), "rhs": rational(&c.rhs) }));
            }
        }
        return Ok(Report::json(json!({ "runs": a.runs, "first_seed": s.seed, "passed": passed, "failures": failures })));
    }
    let choices = match (&a.h, a.random) {
        (_, true) => HChoices::Random { seed: s.seed },
        (Some(h), false) => HChoices::Fixed {
            h_minus1: a.h_minus1,
            h: h.iter().map(|v| v.parse::<ExactInt>().map_err(|_| usage(format!("h value {v:?} is not an integer")))).collect::<Result<_>>()?,
        },
        (None, false) => HChoices::Zero,
    };
    let t = ledger_replay(a.k, a.r, mode, a.steps, &choices)?;
    let rows = t.states.iter().map(|st| {
        vec![
            st.n.to_string(),
            st.a.to_string(),
            st.b.to_string(),
            st.h.as_ref().map_or(String::new(), |h| h.to_string()),
            st.psi.to_string(),
            st.c.to_string(),
            st.gamma.to_string(),
        ]
    });
    Ok(Report::table(trace_json(&t), csv("n,a,b,h,psi,c,gamma", rows)))
}
