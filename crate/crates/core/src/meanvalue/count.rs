use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::{CountMap, PowerSumVector, SystemParams};
use crate::{Budget, ExactInt, Result};

/// How the multiplicity table of s-tuples is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Pick the cheapest of the concrete strategies by estimated cost.
    Auto,
    /// Every tuple in `[1,X]^s`.
    Direct,
    /// Nondecreasing tuples weighted by their permutation count.
    SymmetryReduced,
    /// `N_1` convolved with itself `s` times.
    Convolution,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Direct => "direct",
            Strategy::SymmetryReduced => "symmetry",
            Strategy::Convolution => "convolution",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "auto" => Some(Strategy::Auto),
            "direct" => Some(Strategy::Direct),
            "symmetry" | "symmetry-reduced" => Some(Strategy::SymmetryReduced),
            "convolution" => Some(Strategy::Convolution),
            _ => None,
        }
    }
}

/// Tunables for [`count_j_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountConfig {
    pub budget: Budget,
    /// Convolution is chosen under `Auto` when
    /// `convolution_bias * conv_cost < symmetry_cost`.
    pub convolution_bias: f64,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { budget: Budget::DEFAULT, convolution_bias: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOutcome {
    pub j: ExactInt,
    pub strategy: Strategy,
    pub estimated_cost: u128,
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays exact because acc = C(n, i).
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Upper bound on the number of distinct power-sum vectors of i-tuples.
fn distinct_bound(params: &SystemParams, i: u32) -> u128 {
    let x = params.x as u128;
    let multisets = binomial_u128(x + i as u128 - 1, i as u128);
    let mut range: u128 = 1;
    let mut xp: u128 = 1;
    for _ in 0..params.k {
        xp = xp.saturating_mul(x);
        range = range.saturating_mul((i as u128).saturating_mul(xp - 1).saturating_add(1));
    }
    multisets.min(range)
}

/// Estimated enumeration steps of a concrete strategy.
pub fn estimate_cost(params: &SystemParams, strategy: Strategy) -> u128 {
    let x = params.x as u128;
    match strategy {
        Strategy::Direct => x.saturating_pow(params.s),
        Strategy::SymmetryReduced => binomial_u128(x + params.s as u128 - 1, params.s as u128),
        Strategy::Convolution => {
            let mut cost = x;
            for i in 1..params.s {
                cost = cost.saturating_add(distinct_bound(params, i).saturating_mul(x));
            }
            cost
        }
        Strategy::Auto => estimate_cost(params, resolve_strategy(params, Strategy::Auto, &CountConfig::default())),
    }
}

/// Replaces `Auto` by a concrete strategy.
pub fn resolve_strategy(params: &SystemParams, strategy: Strategy, config: &CountConfig) -> Strategy {
    if strategy != Strategy::Auto {
        return strategy;
    }
    let sym = estimate_cost(params, Strategy::SymmetryReduced);
    let conv = estimate_cost(params, Strategy::Convolution);
    if (conv as f64) * config.convolution_bias < sym as f64 {
        Strategy::Convolution
    } else {
        Strategy::SymmetryReduced
    }
}

fn power_table(params: &SystemParams) -> Vec<PowerSumVector> {
    (0..=params.x).map(|v| PowerSumVector::of_tuple(params.k, &[v])).collect()
}

/// Multiplicity table of the s-tuples whose outer variable lies in `outer`.
///
/// The outer variable is `x_1` for `Direct`, the smallest entry for
/// `SymmetryReduced` and the last convolved factor for `Convolution`, so
/// the maps of a partition of `[1,X]` merge to the full table. `strategy`
/// must not be `Auto`.
pub fn count_map(params: &SystemParams, strategy: Strategy, outer: RangeInclusive<u64>) -> CountMap {
    let lo = (*outer.start()).max(1);
    let hi = (*outer.end()).min(params.x);
    let mut map = CountMap::new();
    if lo > hi {
        return map;
    }
    let table = power_table(params);
    match strategy {
        Strategy::Direct => direct(params, &table, lo, hi, &mut map),
        Strategy::SymmetryReduced => symmetric(params, &table, lo, hi, &mut map),
        Strategy::Convolution => convolution(params, &table, lo, hi, &mut map),
        Strategy::Auto => panic!("count_map needs a concrete strategy"),
    }
    map
}

fn direct(params: &SystemParams, table: &[PowerSumVector], lo: u64, hi: u64, map: &mut CountMap) {
    let s = params.s as usize;
    let mut sums: Vec<PowerSumVector> = vec![PowerSumVector::zero(params.k); s + 1];
    let mut tuple = vec![0u64; s];
    // depth-first odometer; tuple[d] is the current value at depth d
    let mut d = 0usize;
    tuple[0] = lo - 1;
    loop {
        let limit = if d == 0 { hi } else { params.x };
        if tuple[d] == limit {
            if d == 0 {
                break;
            }
            d -= 1;
            continue;
        }
        tuple[d] += 1;
        sums[d + 1] = sums[d].add(&table[tuple[d] as usize]);
        if d + 1 == s {
            map.insert_vector(&sums[s], &ExactInt::ONE);
        } else {
            d += 1;
            tuple[d] = 0;
        }
    }
}

fn symmetric(params: &SystemParams, table: &[PowerSumVector], lo: u64, hi: u64, map: &mut CountMap) {
    let s = params.s as usize;
    let s_fact = ExactInt::factorial(params.s);
    let mut sums: Vec<PowerSumVector> = vec![PowerSumVector::zero(params.k); s + 1];
    let mut tuple = vec![0u64; s];
    let mut d = 0usize;
    tuple[0] = lo - 1;
    loop {
        let limit = if d == 0 { hi } else { params.x };
        if tuple[d] == limit {
            if d == 0 {
                break;
            }
            d -= 1;
            continue;
        }
        tuple[d] += 1;
        sums[d + 1] = sums[d].add(&table[tuple[d] as usize]);
        if d + 1 == s {
            map.insert_vector(&sums[s], &(&s_fact / &multiplicity_denominator(&tuple)));
        } else {
            d += 1;
            tuple[d] = tuple[d - 1] - 1;
        }
    }
}

/// `Π m_i!` over the run lengths of a sorted tuple.
fn multiplicity_denominator(sorted: &[u64]) -> ExactInt {
    let mut den = ExactInt::ONE;
    let mut run = 1u32;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            den *= &ExactInt::from(run);
        } else {
            run = 1;
        }
    }
    den
}

fn convolution(params: &SystemParams, table: &[PowerSumVector], lo: u64, hi: u64, map: &mut CountMap) {
    let mut acc: BTreeMap<PowerSumVector, ExactInt> = BTreeMap::new();
    acc.insert(PowerSumVector::zero(params.k), ExactInt::ONE);
    for step in 0..params.s {
        let range = if step + 1 == params.s { lo..=hi } else { 1..=params.x };
        let mut next: BTreeMap<PowerSumVector, ExactInt> = BTreeMap::new();
        for (v, c) in &acc {
            for x in range.clone() {
                let w = v.add(&table[x as usize]);
                match next.get_mut(&w) {
                    Some(e) => *e += c,
                    None => {
                        next.insert(w, c.clone());
                    }
                }
            }
        }
        acc = next;
    }
    for (v, c) in acc {
        map.insert_vector(&v, &c);
    }
}

/// `J_{s,k}(X)` with the default configuration and the given budget.
pub fn count_j(params: &SystemParams, strategy: Strategy, budget: Budget) -> Result<ExactInt> {
    count_j_with(params, strategy, &CountConfig { budget, ..CountConfig::default() }).map(|o| o.j)
}

/// `J_{s,k}(X) = Σ_v N(v)²`, reporting the strategy used and its estimated cost.
pub fn count_j_with(params: &SystemParams, strategy: Strategy, config: &CountConfig) -> Result<CountOutcome> {
    let strategy = resolve_strategy(params, strategy, config);
    let estimated_cost = estimate_cost(params, strategy);
    config.budget.check(estimated_cost)?;
    let map = count_map(params, strategy, 1..=params.x);
    debug_assert!(map.is_consistent());
    debug_assert_eq!(map.total(), &ExactInt::from(params.x).pow(params.s));
    Ok(CountOutcome { j: map.sum_of_squares(), strategy, estimated_cost })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(k: u32, s: u32, x: u64, strategy: Strategy) -> ExactInt {
        count_j(&SystemParams::new(k, s, x).unwrap(), strategy, Budget::DEFAULT).unwrap()
    }

    /// Independent oracle: count pairs of tuples with equal power sums directly.
    fn brute(k: u32, s: u32, x: u64) -> u64 {
        let tuples: Vec<Vec<u64>> = (0..(x as usize).pow(s))
            .map(|mut i| {
                (0..s)
                    .map(|_| {
                        let v = (i % x as usize) as u64 + 1;
                        i /= x as usize;
                        v
                    })
                    .collect()
            })
            .collect();
        let sums: Vec<Vec<u64>> = tuples.iter().map(|t| (1..=k).map(|j| t.iter().map(|v| v.pow(j)).sum()).collect()).collect();
        let mut n = 0;
        for a in &sums {
            for b in &sums {
                if a == b {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn examples() {
        for st in [Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution, Strategy::Auto] {
            assert_eq!(j(3, 1, 5, st), ExactInt::from(5));
            assert_eq!(j(2, 2, 2, st), ExactInt::from(6));
            assert_eq!(j(1, 2, 3, st), ExactInt::from(19));
        }
    }

    #[test]
    fn matches_brute_force() {
        for (k, s, x) in [(1, 3, 4), (2, 3, 4), (3, 3, 3), (2, 2, 6), (1, 1, 7)] {
            let want = ExactInt::from(brute(k, s, x));
            for st in [Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution] {
                assert_eq!(j(k, s, x, st), want, "k={k} s={s} X={x} {st:?}");
            }
        }
    }

    #[test]
    fn partitioned_maps_merge_to_full() {
        let p = SystemParams::new(2, 3, 7).unwrap();
        for st in [Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution] {
            let full = count_map(&p, st, 1..=7);
            let mut merged = count_map(&p, st, 5..=7);
            merged.merge(count_map(&p, st, 1..=2));
            merged.merge(count_map(&p, st, 3..=4));
            assert_eq!(merged, full, "{st:?}");
        }
    }

    #[test]
    fn budget_reports_estimate() {
        let p = SystemParams::new(3, 6, 100).unwrap();
        let err = count_j(&p, Strategy::Direct, Budget(1000)).unwrap_err();
        assert_eq!(err, crate::Error::BudgetExceeded { estimated: 100u128.pow(6), budget: 1000 });
    }

    #[test]
    fn auto_prefers_convolution_for_linear_system() {
        let p = SystemParams::new(1, 6, 50).unwrap();
        assert_eq!(resolve_strategy(&p, Strategy::Auto, &CountConfig::default()), Strategy::Convolution);
        let p = SystemParams::new(4, 2, 50).unwrap();
        assert_eq!(resolve_strategy(&p, Strategy::Auto, &CountConfig::default()), Strategy::SymmetryReduced);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial_u128(67, 4), 766_480);
        assert_eq!(binomial_u128(5, 0), 1);
    }
}
