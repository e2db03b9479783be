use serde_json::json;
use vmv_core::meanvalue::{
    diagonal_oracle, estimate_cost, ConditionedBlock, ConditionedFamily, ResidueConstraint, RestrictedSystem, Strategy,
    SystemParams,
};

use super::{count_config, exact, parse_signs, signs, strategy_of, Report};
use crate::args::{ConditionedArg, CountJArgs, CountRestrictedArgs, DiagonalArgs, LadderArgs};
use crate::config::Settings;
use crate::error::{usage, Result};
use crate::parallel::{count_j_parallel, scaling_ladder_parallel};

pub(super) fn count_j(a: &CountJArgs, s: &Settings) -> Result<Report> {
    let params = SystemParams::new(a.k, a.s, a.x)?;
    let o = count_j_parallel(&params, strategy_of(a.strategy, s), &count_config(s), s.threads)?;
    Ok(Report {
        json: json!({ "J": exact(&o.j) }),
        csv: None,
        strategy: Some(o.strategy),
        details: json!({ "estimated_cost": o.estimated_cost.to_string() }),
    })
}

pub(super) fn diagonal(a: &DiagonalArgs, s: &Settings) -> Result<Report> {
    let params = SystemParams::new(a.k, a.s, a.x)?;
    s.budget.check(estimate_cost(&params, Strategy::SymmetryReduced))?;
    let d = diagonal_oracle(&params);
    if !a.compare {
        return Ok(Report::json(json!({ "D": exact(&d) })));
    }
    let o = count_j_parallel(&params, s.strategy, &count_config(s), s.threads)?;
    Ok(Report {
        json: json!({ "D": exact(&d), "J": exact(&o.j), "equal": d == o.j }),
        csv: None,
        strategy: Some(o.strategy),
        details: json!({ "estimated_cost": o.estimated_cost.to_string() }),
    })
}

pub(super) fn ladder(a: &LadderArgs, s: &Settings) -> Result<Report> {
    let strategy = strategy_of(a.strategy, s);
    let l = scaling_ladder_parallel(a.k, a.s, &a.x, strategy, &count_config(s), s.threads)?;
    let rows: Vec<_> =
        l.rows.iter().map(|r| json!({ "X": r.x, "J": exact(&r.j), "log2X": r.log2_x, "log2J": r.log2_j })).collect();
    Ok(Report {
        json: json!({ "k": l.k, "s": l.s, "slope": l.slope, "rows": rows }),
        csv: Some(l.to_csv()),
        strategy: Some(strategy),
        details: serde_json::Value::Null,
    })
}

fn parse_fields(spec: &str, n: usize, what: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = spec.split(':').map(|p| p.trim().to_string()).collect();
    if parts.len() != n {
        return Err(usage(format!("{what} {spec:?} must have {n} ':'-separated fields")));
    }
    Ok(parts)
}

fn num<T: std::str::FromStr>(s: &str, spec: &str) -> Result<T> {
    s.parse().map_err(|_| usage(format!("{s:?} in {spec:?} is not a nonnegative integer")))
}

fn parse_constraint(spec: &str) -> Result<Option<ResidueConstraint>> {
    if spec.trim() == "*" {
        return Ok(None);
    }
    let f = parse_fields(spec, 3, "constraint")?;
    Ok(Some(ResidueConstraint::new(num(&f[0], spec)?, num(&f[1], spec)?, num(&f[2], spec)?)?))
}

fn parse_block(spec: &str) -> Result<ConditionedBlock> {
    let f = parse_fields(spec, 4, "block")?;
    Ok(ConditionedBlock::new(num(&f[0], spec)?, num(&f[1], spec)?, num(&f[2], spec)?, parse_signs(&f[3])?)?)
}

pub(super) fn count_restricted(a: &CountRestrictedArgs, s: &Settings) -> Result<Report> {
    if let Some(which) = a.max {
        let (Some(p), Some(la), Some(lb), Some(r)) = (a.p, a.a, a.b, a.r) else {
            return Err(usage("--max needs --p, --a, --b and --r"));
        };
        let fam = ConditionedFamily { k: a.k, x: a.x, p, a: la, b: lb, r };
        let m = match which {
            ConditionedArg::I => fam.max_i(a.s as usize, s.budget)?,
            ConditionedArg::K => fam.max_k(a.s as usize, s.budget)?,
        };
        return Ok(Report::json(json!({
            "max": if which == ConditionedArg::I { "I" } else { "K" },
            "value": exact(&m.value),
            "xi": m.xi,
            "eta": m.eta,
            "sigma": signs(&m.sigma),
            "tau": m.tau.as_deref().map(signs),
            "evaluated": m.evaluated,
        })));
    }
    let mut constraints = a.constraints.iter().map(|c| parse_constraint(c)).collect::<Result<Vec<_>>>()?;
    if constraints.len() == 1 {
        constraints = vec![constraints[0]; a.s as usize];
    }
    let sys = RestrictedSystem {
        k: a.k,
        x: a.x,
        plain: a.s as usize,
        constraints,
        blocks: a.blocks.iter().map(|b| parse_block(b)).collect::<Result<_>>()?,
    };
    if a.k == 0 || a.x == 0 {
        return Err(usage("--k and --x must be at least 1"));
    }
    let cost = sys.estimated_cost()?;
    let count = sys.count(s.budget)?;
    Ok(Report { details: json!({ "estimated_cost": cost.to_string() }), ..Report::json(json!({ "count": exact(&count) })) })
}
