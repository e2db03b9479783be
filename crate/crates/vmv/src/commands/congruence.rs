use serde_json::{json, Value};
use vmv_core::congruence::{
    enumerate_b, hensel_count, lemma32_solve, lemma_grid, max_b, BFamily, CongruenceInstance, LemmaId, LiftMode,
    SearchMode, Verdict,
};

use super::{exact, parse_signs, signs, Report};
use crate::args::{CongruenceBArgs, HenselArgs, LemmaArg, Lemma32Args, LiftArg, SearchArg, VerifyLemmaArgs};
use crate::config::Settings;
use crate::error::{usage, Result};
use crate::polyparse::{default_vars, parse_poly};

fn search_of(a: SearchArg) -> SearchMode {
    match a {
        SearchArg::Exhaustive => SearchMode::Exhaustive,
        SearchArg::Symmetry => SearchMode::Symmetry,
    }
}

fn lemma_of(a: LemmaArg) -> LemmaId {
    match a {
        LemmaArg::FullLift => LemmaId::FullLift,
        LemmaArg::FullLiftBase => LemmaId::FullLiftBase,
        LemmaArg::ReducedLift => LemmaId::ReducedLift,
        LemmaArg::ReducedLiftBase => LemmaId::ReducedLiftBase,
    }
}

fn residues(v: &[u64]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn witnesses(w: &[Vec<u64>]) -> Value {
    Value::Array(w.iter().map(|t| residues(t)).collect())
}

pub(super) fn congruence_b(a: &CongruenceBArgs, s: &Settings) -> Result<Report> {
    let mode = match a.mode {
        LiftArg::Full => LiftMode::Full,
        LiftArg::Reduced => LiftMode::Reduced,
    };
    let family = BFamily { p: a.p, k: a.k, r: a.r, a: a.a, b: a.b, mode };
    if let Some(m) = &a.m {
        let (Some(eta), Some(sigma)) = (a.eta, a.sigma.as_deref()) else {
            return Err(usage("--m needs --eta and --sigma"));
        };
        let xi = match (a.a, a.xi) {
            (0, _) => 0,
            (_, Some(xi)) => xi,
            (_, None) => return Err(usage("--m with a >= 1 needs --xi")),
        };
        let inst = CongruenceInstance { family, sigma: parse_signs(sigma)?, xi, eta, m: m.clone() };
        let c = enumerate_b(&inst, s.budget)?;
        return Ok(Report::json(json!({ "count": exact(&c.cardinality), "witnesses": witnesses(&c.witnesses) })));
    }
    let b = max_b(&family, search_of(a.search), s.budget)?;
    Ok(Report {
        details: json!({ "estimated_cost": family.family_cost(search_of(a.search)).to_string() }),
        ..Report::json(json!({
            "B": exact(&b.value),
            "h": family.h(),
            "xi": b.xi,
            "eta": b.eta,
            "sigma": signs(&b.sigma),
            "m": residues(&b.m),
            "witnesses": witnesses(&b.witnesses),
            "evaluated": b.evaluated,
        }))
    })
}

pub(super) fn verify_lemma(a: &VerifyLemmaArgs, s: &Settings) -> Result<Report> {
    let grid = lemma_grid(&a.p, &a.k, &a.a, &a.b, search_of(a.search), s.budget)?;
    let want = a.lemma.map(lemma_of);
    let reports: Vec<_> =
        grid.into_iter().filter(|r| want.map_or(true, |l| l == r.lemma) && a.r.map_or(true, |rr| rr == r.family.r)).collect();
    let (mut pass, mut fail, mut skipped) = (0, 0, 0);
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for r in &reports {
        match r.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            _ => skipped += 1,
        }
        let detail = match &r.verdict {
            Verdict::SkippedHypothesis(why) => Some(why.clone()),
            Verdict::SkippedBudget { estimated, budget } => Some(format!("estimated cost {estimated} exceeds budget {budget}")),
            _ => None,
        };
        let f = r.family;
        rows.push(json!({
            "lemma": r.lemma.name(),
            "p": f.p, "k": f.k, "r": f.r, "a": f.a, "b": f.b, "h": f.h(),
            "rhs": exact(&r.rhs),
            "observed": r.observed.as_ref().map(|o| exact(&o.value)),
            "verdict": r.verdict.label(),
            "detail": detail,
        }));
        csv_rows.push(vec![
            r.lemma.name().to_string(),
            f.p.to_string(),
            f.k.to_string(),
            f.r.to_string(),
            f.a.to_string(),
            f.b.to_string(),
            f.h().to_string(),
            r.rhs.to_string(),
            r.observed.as_ref().map_or(String::new(), |o| o.value.to_string()),
            r.verdict.label().to_string(),
        ]);
    }
    Ok(Report::table(
        json!({ "reports": rows, "summary": { "pass": pass, "fail": fail, "skipped": skipped } }),
        super::csv("lemma,p,k,r,a,b,h,rhs,observed,verdict", csv_rows),
    ))
}

pub(super) fn hensel(a: &HenselArgs, s: &Settings) -> Result<Report> {
    let vars = a.vars.clone().unwrap_or_else(|| default_vars(a.polys.len()));
    if vars.len() != a.polys.len() {
        return Err(usage(format!("{} polynomials need {} variables, got {}", a.polys.len(), a.polys.len(), vars.len())));
    }
    let system = a
        .polys
        .iter()
        .map(|p| parse_poly(p, &vars).map_err(|e| usage(format!("polynomial {p:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let r = hensel_count(&system, a.prime, a.level, s.budget)?;
    Ok(Report::json(json!({
        "count": exact(&r.count),
        "degree_bound": exact(&r.degree_bound),
        "within_bound": r.within_bound,
    })))
}

pub(super) fn lemma32(a: &Lemma32Args) -> Result<Report> {
    let c = lemma32_solve(a.alpha, a.beta, a.max_beta)?;
    Ok(Report::json(json!({
        "alpha": c.alpha,
        "beta": c.beta,
        "c": c.c.iter().map(exact).collect::<Vec<_>>(),
        "d": c.d.iter().map(exact).collect::<Vec<_>>(),
        "d_beta": exact(c.d_beta()),
        "verified": c.verify(),
    })))
}
