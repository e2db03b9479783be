use super::coeffs::{CoefficientVector, Phase};
use crate::exponents::tau;
use crate::{Budget, Error, ExactRational, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FracMin {
    /// Smallest `n` attaining the minimum.
    pub n_star: u64,
    /// `min_{1<=n<=N} ‖α_1 n + … + α_k n^k‖`, exact.
    pub value: ExactRational,
    /// `N^{−τ(k)}` when `τ(k)` is defined (`k >= 4`).
    pub reference: Option<f64>,
    /// Whether `value < reference`. Informational only: the bound is asymptotic in `N`.
    pub below_reference: Option<bool>,
}

pub fn fractional_min_search(coeffs: &CoefficientVector, n: u64, budget: Budget) -> Result<FracMin> {
    if n < 1 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    budget.check(n as u128 * coeffs.k() as u128)?;
    let phase = Phase::new(coeffs);
    let half = ExactRational::frac(1, 2);
    let mut best: Option<(u64, ExactRational)> = None;
    for m in 1..=n {
        let (r, _) = phase.residue(m);
        let d = if r <= half { r } else { &ExactRational::one() - &r };
        if best.as_ref().map_or(true, |(_, b)| d < *b) {
            let done = d.is_zero();
            best = Some((m, d));
            if done {
                break;
            }
        }
    }
    let (n_star, value) = best.expect("N >= 1");
    let reference = tau(coeffs.k() as u64).ok().map(|t| libm::pow(n as f64, -t.exponent.to_f64()));
    let below_reference = reference.map(|r| value.to_f64() < r);
    Ok(FracMin { n_star, value, reference, below_reference })
}
