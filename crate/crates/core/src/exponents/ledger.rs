use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bounds::{kappa_params, KappaMode};
use crate::{Error, ExactInt, ExactRational, Result};

/// How the free choices `h_{−1}, h_0, …, h_{N−1}` are made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HChoices {
    /// Every `h` is zero.
    Zero,
    /// Explicit `h_{−1}` and `h_0..h_{N−1}`.
    Fixed { h_minus1: u8, h: Vec<ExactInt> },
    /// Uniform draws from each admissible interval.
    Random { seed: u64 },
}

/// Parameters that stay fixed along a replay.
#[derive(Clone, Debug, PartialEq)]
pub struct LedgerParams {
    pub k: u64,
    pub r: u64,
    pub mode: KappaMode,
    /// `k` in near-optimal mode, `ρ = k − r + 1` in quasi-diagonal mode.
    pub base: u64,
    /// `s = r·base`.
    pub s: u64,
    pub kappa: ExactRational,
    /// `θ² = N^{−1}(r/s)^{2N+4}`, kept exact.
    pub theta_sq: ExactRational,
    pub theta: f64,
    pub steps: usize,
    pub h_minus1: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerState {
    pub n: usize,
    pub a: ExactInt,
    pub b: ExactInt,
    /// The choice made at this step; `None` at the final step.
    pub h: Option<ExactInt>,
    pub psi: ExactRational,
    pub c: ExactRational,
    pub gamma: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerCheck {
    pub n: usize,
    pub name: &'static str,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub holds: bool,
    /// Informational checks are reported but do not affect [`LedgerTrace::all_pass`].
    pub enforced: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LedgerTrace {
    pub params: LedgerParams,
    pub states: Vec<LedgerState>,
    pub checks: Vec<LedgerCheck>,
}

impl LedgerTrace {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds || !c.enforced)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerCheck> {
        self.checks.iter().filter(|c| c.enforced && !c.holds)
    }
}

fn int(v: impl Into<ExactInt>) -> ExactRational {
    ExactRational::from_int(v.into())
}

/// Replays the iteration recurrences for `steps` steps and checks the
/// inequalities the argument relies on at every index.
pub fn ledger_replay(k: u64, r: u64, mode: KappaMode, steps: usize, choices: &HChoices) -> Result<LedgerTrace> {
    let kp = kappa_params(k, r, mode)?;
    if steps == 0 {
        return Err(Error::InvalidParameter("ledger needs at least one step".into()));
    }
    let base = match mode {
        KappaMode::NearOptimal => k,
        KappaMode::QuasiDiagonal => k - r + 1,
    };
    let s = r * base;
    let ratio = ExactRational::frac(s as i128, r as i128);
    let theta_sq = &ExactRational::frac(r as i128, s as i128).pow(2 * steps as i32 + 4) / &int(steps as u64);
    let params = LedgerParams {
        k,
        r,
        mode,
        base,
        s,
        kappa: kp.kappa,
        theta: libm::sqrt(theta_sq.to_f64()),
        theta_sq,
        steps,
        h_minus1: 0,
    };

    let mut rng = match choices {
        HChoices::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let h_minus1: u8 = match choices {
        HChoices::Zero => 0,
        HChoices::Fixed { h_minus1, h } => {
            if h.len() != steps {
                return Err(Error::DimensionMismatch { expected: steps, found: h.len() });
            }
            *h_minus1
        }
        HChoices::Random { .. } => rng.as_mut().map_or(0, |g| g.gen_range(0..=1)),
    };
    if h_minus1 > 1 {
        return Err(Error::InvalidChoice { step: -1, value: format!("{h_minus1}"), max: "1".into() });
    }
    let params = LedgerParams { h_minus1, ..params };

    let s_q = int(s);
    let r_q = int(r);
    let w = int(2 * s - r + 1);

    let mut states = Vec::with_capacity(steps + 1);
    let mut a = ExactInt::ZERO;
    let mut b = ExactInt::from(1 + h_minus1 as u64);
    let mut psi = ExactRational::zero();
    let mut c = ExactRational::one();
    let mut gamma = &w * &int(h_minus1 as u64);
    let mut h_prev = ExactInt::from(h_minus1 as u64);
    let mut all_zero = h_minus1 == 0;

    for n in 0..=steps {
        if n == steps {
            states.push(LedgerState { n, a, b, h: None, psi, c, gamma });
            break;
        }
        let h_max = &ExactInt::from(2 * (base - 1)) * &b;
        let h = match choices {
            HChoices::Zero => ExactInt::ZERO,
            HChoices::Fixed { h, .. } => h[n].clone(),
            HChoices::Random { .. } => {
                let hi = h_max.to_u64().ok_or_else(|| Error::OutOfRange {
                    what: "steps",
                    detail: format!("random draw at step {n} needs an interval bound below 2^64"),
                })?;
                ExactInt::from(rng.as_mut().map_or(0, |g| g.gen_range(0..=hi)))
            }
        };
        if h.is_negative() || h > h_max {
            return Err(Error::InvalidChoice { step: n as i64, value: h.to_decimal(), max: h_max.to_decimal() });
        }
        all_zero &= h.is_zero();

        let next_a = b.clone();
        let next_b = &(&ExactInt::from(base) * &b) + &h;
        let next_psi = &(&ratio * &psi) + &(&(&ratio - &ExactRational::one()) * &int(b.clone()));
        let next_c = &ratio * &(&c + &ExactRational::one());
        let next_gamma = &(&(&ratio * &gamma) + &(&w * &int(h.clone()))) - &(&s_q * &int(h_prev.clone()));

        states.push(LedgerState { n, a, b, h: Some(h.clone()), psi, c, gamma });
        a = next_a;
        b = next_b;
        psi = next_psi;
        c = next_c;
        gamma = next_gamma;
        h_prev = h;
    }

    let checks = run_checks(&params, &states, all_zero, &s_q, &r_q, &ratio);
    Ok(LedgerTrace { params, states, checks })
}

fn run_checks(
    p: &LedgerParams,
    states: &[LedgerState],
    all_zero: bool,
    s_q: &ExactRational,
    r_q: &ExactRational,
    ratio: &ExactRational,
) -> Vec<LedgerCheck> {
    let mut out = Vec::new();
    let mut push = |n, name, lhs: ExactRational, rhs: ExactRational, holds: bool, enforced| {
        out.push(LedgerCheck { n, name, lhs, rhs, holds, enforced });
    };
    let base = int(p.base);
    let s_minus_r = s_q - r_q;
    let c_lead = &(&(s_q + s_q) - r_q) / &s_minus_r;
    let c_shift = s_q / &s_minus_r;
    let w = int(2 * p.s - p.r + 1);
    let tail = int(2 * p.s - 2 * p.r + 1);

    for st in states {
        let n = st.n;
        let ratio_n = ratio.pow(n as i32);
        let b = int(st.b.clone());

        push(n, "gamma-nonneg", st.gamma.clone(), ExactRational::zero(), !st.gamma.is_negative(), true);

        let three = &int(3u64) * &ratio_n;
        push(n, "c-bound", st.c.clone(), three.clone(), st.c <= three, true);

        let closed = &(&c_lead * &ratio_n) - &c_shift;
        push(n, "c-closed-form", st.c.clone(), closed.clone(), st.c == closed, true);

        if n >= 1 {
            let b_prev = int(states[n - 1].b.clone());
            let rhs = &(&(&w * &b) - &(s_q * &b_prev)) - &(&tail * &base.pow(n as i32));
            push(n, "gamma-lower", st.gamma.clone(), rhs.clone(), st.gamma >= rhs, true);
        }

        let psi_rhs = if n == 0 {
            ExactRational::zero()
        } else {
            &(&int(n as u64) * &int(p.base - 1)) * &base.pow(n as i32 - 1)
        };
        push(n, "psi-lower", st.psi.clone(), psi_rhs.clone(), st.psi >= psi_rhs, true);

        if all_zero {
            let pow = base.pow(n as i32);
            push(n, "b-power", b.clone(), pow.clone(), b == pow, true);
        }

        // b_n < √N (s/r)^n, squared to stay exact. Only some sequences
        // satisfy it, so it is reported rather than enforced.
        let lhs = &b * &b;
        let rhs = &int(p.steps as u64) * &ratio_n.pow(2);
        push(n, "b-growth", lhs.clone(), rhs.clone(), lhs < rhs, false);
    }
    out
}
