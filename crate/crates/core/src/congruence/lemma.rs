use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{lemma32_solve, max_b, BFamily, LiftMode, MaxB, SearchMode, DEFAULT_MAX_BETA};
use crate::{Budget, Error, ExactInt, Result};

/// The four class-count bounds, by lift mode and whether `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// `a >= 1`, `h = k`: `B <= k! p^{r(r−1)(a+b)/2}`.
    FullLift,
    /// `a = 0`, `h = k`: `B <= k! p^{r(r−1)b/2}`.
    FullLiftBase,
    /// `a >= 1`, `h = ρ`, `b >= (r−1)a`: `B <= k! p^{(r−1)a}`.
    ReducedLift,
    /// `a = 0`, `h = ρ`: `B <= k!`.
    ReducedLiftBase,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] = [LemmaId::FullLift, LemmaId::FullLiftBase, LemmaId::ReducedLift, LemmaId::ReducedLiftBase];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::FullLift => "full-lift",
            LemmaId::FullLiftBase => "full-lift-base",
            LemmaId::ReducedLift => "reduced-lift",
            LemmaId::ReducedLiftBase => "reduced-lift-base",
        }
    }

    pub fn parse(s: &str) -> Option<LemmaId> {
        LemmaId::ALL.into_iter().find(|l| l.name() == s)
    }

    pub fn mode(self) -> LiftMode {
        match self {
            LemmaId::FullLift | LemmaId::FullLiftBase => LiftMode::Full,
            LemmaId::ReducedLift | LemmaId::ReducedLiftBase => LiftMode::Reduced,
        }
    }

    pub fn base_level(self) -> bool {
        matches!(self, LemmaId::FullLiftBase | LemmaId::ReducedLiftBase)
    }

    /// Right-hand side of the bound.
    pub fn rhs(self, p: u64, k: u32, r: usize, a: u32, b: u32) -> ExactInt {
        let r = r as u32;
        let e = match self {
            LemmaId::FullLift => r * (r - 1) * (a + b) / 2,
            LemmaId::FullLiftBase => r * (r - 1) * b / 2,
            LemmaId::ReducedLift => (r - 1) * a,
            LemmaId::ReducedLiftBase => 0,
        };
        &ExactInt::factorial(k) * &ExactInt::from(p).pow(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The prime divides one of the elimination constants the argument inverts.
    SkippedHypothesis(String),
    /// The instance lies outside the enumerable grid for the given budget.
    SkippedBudget { estimated: u128, budget: u128 },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SkippedHypothesis(_) => "skipped: proof hypothesis violated",
            Verdict::SkippedBudget { .. } => "skipped: outside feasible grid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub family: BFamily,
    pub rhs: ExactInt,
    pub observed: Option<MaxB>,
    pub verdict: Verdict,
}

/// The leading elimination constants `d_β` for `α = ρ − 1`,
/// `β = j − ρ + 1`, `ρ <= j <= k`, that the `a >= 1` arguments invert mod `p`.
pub fn elimination_constants(k: u32, r: usize) -> Result<Vec<ExactInt>> {
    let rho = k - r as u32 + 1;
    (rho..=k).map(|j| lemma32_solve(rho - 1, j - rho + 1, DEFAULT_MAX_BETA.max(k)).map(|c| c.d_beta().clone())).collect()
}

fn check_preconditions(lemma: LemmaId, p: u64, k: u32, r: usize, a: u32, b: u32) -> Result<()> {
    if p <= k as u64 {
        return Err(Error::Precondition(format!("the bounds assume p > k, got p={p}, k={k}")));
    }
    if lemma.base_level() != (a == 0) {
        return Err(Error::Precondition(format!("{} needs {}, got a={a}", lemma.name(), if lemma.base_level() { "a = 0" } else { "a >= 1" })));
    }
    if lemma == LemmaId::ReducedLift && (b as u64) < (r as u64 - 1) * a as u64 {
        return Err(Error::Precondition(format!("reduced-lift needs b >= (r-1)a, got b={b}, r={r}, a={a}")));
    }
    Ok(())
}

/// Compares `B_{a,b}^{r,h}(p)` with the bound's right-hand side.
pub fn verify_lemma_bound(lemma: LemmaId, family: &BFamily, search: SearchMode, budget: Budget) -> Result<LemmaReport> {
    let BFamily { p, k, r, a, b, .. } = *family;
    if family.mode != lemma.mode() {
        return Err(Error::Precondition(format!("{} uses lift mode {:?}", lemma.name(), lemma.mode())));
    }
    family.validate()?;
    check_preconditions(lemma, p, k, r, a, b)?;
    let rhs = lemma.rhs(p, k, r, a, b);
    if !lemma.base_level() {
        let ds = elimination_constants(k, r)?;
        if let Some(d) = ds.iter().find(|d| d.mod_floor(&ExactInt::from(p)).is_zero()) {
            let why = format!("p = {p} divides the elimination constant {d}");
            return Ok(LemmaReport { lemma, family: *family, rhs, observed: None, verdict: Verdict::SkippedHypothesis(why) });
        }
    }
    let best = max_b(family, search, budget)?;
    let verdict = if best.value <= rhs { Verdict::Pass } else { Verdict::Fail };
    Ok(LemmaReport { lemma, family: *family, rhs, observed: Some(best), verdict })
}

/// Every applicable bound on the grid `p ∈ primes`, `k ∈ ks`, `1 <= r <= k−1`,
/// `a ∈ levels_a`, `b ∈ levels_b` with `a < b`. Instances over budget are
/// reported as [`Verdict::SkippedBudget`] instead of failing the run.
pub fn lemma_grid(primes: &[u64], ks: &[u32], levels_a: &[u32], levels_b: &[u32], search: SearchMode, budget: Budget) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for &p in primes {
        for &k in ks {
            for r in 1..k as usize {
                for &a in levels_a {
                    for &b in levels_b {
                        if a >= b {
                            continue;
                        }
                        for lemma in LemmaId::ALL {
                            if check_preconditions(lemma, p, k, r, a, b).is_err() {
                                continue;
                            }
                            let family = BFamily { p, k, r, a, b, mode: lemma.mode() };
                            match verify_lemma_bound(lemma, &family, search, budget) {
                                Ok(rep) => out.push(rep),
                                Err(Error::BudgetExceeded { estimated, budget }) => out.push(LemmaReport {
                                    lemma,
                                    family,
                                    rhs: lemma.rhs(p, k, r, a, b),
                                    observed: None,
                                    verdict: Verdict::SkippedBudget { estimated, budget },
                                }),
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let f = BFamily { p: 5, k: 3, r: 2, a: 0, b: 1, mode: LiftMode::Reduced };
        let rep = verify_lemma_bound(LemmaId::ReducedLiftBase, &f, SearchMode::Symmetry, Budget::DEFAULT).unwrap();
        assert_eq!(rep.rhs, ExactInt::from(6));
        assert_eq!(rep.verdict, Verdict::Pass);

        let f = BFamily { p: 5, k: 3, r: 2, a: 0, b: 1, mode: LiftMode::Full };
        let rep = verify_lemma_bound(LemmaId::FullLiftBase, &f, SearchMode::Symmetry, Budget::DEFAULT).unwrap();
        assert_eq!(rep.rhs, ExactInt::from(30));
        assert_eq!(rep.verdict, Verdict::Pass);

        let f = BFamily { p: 5, k: 3, r: 1, a: 1, b: 2, mode: LiftMode::Full };
        let rep = verify_lemma_bound(LemmaId::FullLift, &f, SearchMode::Exhaustive, Budget::DEFAULT).unwrap();
        assert_eq!(rep.rhs, ExactInt::from(6));
        assert_eq!(rep.verdict, Verdict::Pass);

        let f = BFamily { p: 5, k: 3, r: 1, a: 1, b: 2, mode: LiftMode::Reduced };
        let rep = verify_lemma_bound(LemmaId::ReducedLift, &f, SearchMode::Symmetry, Budget::DEFAULT).unwrap();
        assert_eq!(rep.rhs, ExactInt::from(6));
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn small_prime_is_a_precondition_error() {
        let f = BFamily { p: 3, k: 3, r: 1, a: 0, b: 1, mode: LiftMode::Reduced };
        assert!(matches!(verify_lemma_bound(LemmaId::ReducedLiftBase, &f, SearchMode::Symmetry, Budget::DEFAULT), Err(Error::Precondition(_))));
        let f = BFamily { p: 5, k: 3, r: 1, a: 0, b: 1, mode: LiftMode::Full };
        assert!(matches!(verify_lemma_bound(LemmaId::FullLift, &f, SearchMode::Symmetry, Budget::DEFAULT), Err(Error::Precondition(_))));
    }

    #[test]
    fn base_level_grid_passes() {
        let reps = lemma_grid(&[5, 7], &[3], &[0], &[1], SearchMode::Symmetry, Budget::DEFAULT).unwrap();
        assert_eq!(reps.len(), 2 * 2 * 2);
        for r in reps {
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn elimination_constants_k3() {
        // r = 1: ρ = 3, α = 2, β = 1: d = (3, 3, 1)
        assert_eq!(elimination_constants(3, 1).unwrap(), [ExactInt::from(3)]);
        assert_eq!(elimination_constants(3, 2).unwrap().len(), 2);
    }

    #[test]
    fn names_round_trip() {
        for l in LemmaId::ALL {
            assert_eq!(LemmaId::parse(l.name()), Some(l));
        }
    }
}
