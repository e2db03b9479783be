use alloc::format;
use core::fmt;

use crate::{Error, ExactRational, Result};

/// Interval of `s` on which a bound is valid; `max = None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SRange {
    pub min: u64,
    pub max: Option<u64>,
}

impl SRange {
    pub const ALL: SRange = SRange { min: 1, max: None };

    pub fn at_least(min: u64) -> Self {
        SRange { min, max: None }
    }

    pub fn up_to(max: u64) -> Self {
        SRange { min: 1, max: Some(max) }
    }

    pub fn contains(&self, s: u64) -> bool {
        s >= self.min && self.max.map_or(true, |m| s <= m)
    }

    pub fn is_empty(&self) -> bool {
        self.max.is_some_and(|m| m < self.min)
    }
}

impl fmt::Display for SRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            Some(m) => write!(f, "[{}, {}]", self.min, m),
            None => write!(f, "[{}, inf)", self.min),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    MeanValue,
    Waring,
    Weyl,
    Tarry,
    Hua,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::MeanValue => "mean-value",
            BoundKind::Waring => "waring",
            BoundKind::Weyl => "weyl",
            BoundKind::Tarry => "tarry",
            BoundKind::Hua => "hua",
        }
    }
}

/// Where a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// `J_s <= X^{2s}`.
    Trivial,
    /// `2s − k(k+1)/2` for `s >= k² − 1`.
    OptimalRange,
    /// `2s − k(k+1)/2 + Δ_{t,k}` for `s >= (k−t)(k+1)`.
    NearOptimal { t: u64 },
    /// `s + ν_{r,k}` for `s <= r(k−r+2)`.
    QuasiDiagonal { r: u64 },
    /// `s + 1` for `k >= 4`, `s <= k²/4 + k`.
    QuasiDiagonalUniform,
    /// `(s/t)·λ_t` from a bound `λ_t` at a larger anchor `t`.
    Holder { anchor: u64 },
    /// Weyl-sum exponent `σ(k)`.
    WeylSum,
    /// Fractional parts exponent `τ(k)`.
    FractionalParts,
    /// Tarry scan bound on `W(k, h)`.
    TarryScan,
    /// Hua-type thresholds `C_k`, `S_k`.
    HuaThreshold,
    /// Asymptotic formula threshold `Γ̃(k)`.
    WaringAsymptotic,
}

impl BoundSource {
    pub fn tag(self) -> &'static str {
        match self {
            BoundSource::Trivial => "trivial",
            BoundSource::OptimalRange => "optimal-range",
            BoundSource::NearOptimal { .. } => "near-optimal",
            BoundSource::QuasiDiagonal { .. } => "quasi-diagonal",
            BoundSource::QuasiDiagonalUniform => "quasi-diagonal-uniform",
            BoundSource::Holder { .. } => "holder",
            BoundSource::WeylSum => "weyl-sum",
            BoundSource::FractionalParts => "fractional-parts",
            BoundSource::TarryScan => "tarry-scan",
            BoundSource::HuaThreshold => "hua-threshold",
            BoundSource::WaringAsymptotic => "waring-asymptotic",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSource::NearOptimal { t } => write!(f, "near-optimal(t={t})"),
            BoundSource::QuasiDiagonal { r } => write!(f, "quasi-diagonal(r={r})"),
            BoundSource::Holder { anchor } => write!(f, "holder(t={anchor})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// An exact exponent with the `s`-range on which it is proved.
///
/// For the envelope, `exponent` bounds `λ*_{s,k}`. For [`nu`] and [`delta`]
/// it is the increment itself (`ν_{r,k}` or `Δ_{t,k}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentBound {
    pub exponent: ExactRational,
    pub valid_s_range: SRange,
    pub k: u64,
    pub source: BoundSource,
    pub kind: BoundKind,
}

fn out_of_range(what: &'static str, detail: alloc::string::String) -> Error {
    Error::OutOfRange { what, detail }
}

/// Largest `r` allowed in the quasi-diagonal regime: `min(k − 2, ⌊k/2⌋ + 1)`.
pub fn quasi_diagonal_r_max(k: u64) -> u64 {
    (k.saturating_sub(2)).min(k / 2 + 1)
}

/// `ν_{r,k} = (r−1)/(k−r)`, valid for `s <= r(k−r+2)`.
pub fn nu(r: u64, k: u64) -> Result<ExponentBound> {
    if k < 3 {
        return Err(out_of_range("k", format!("k = {k} but the quasi-diagonal bound needs k >= 3")));
    }
    let r_max = quasi_diagonal_r_max(k);
    if r < 1 || r > r_max {
        return Err(out_of_range("r", format!("r = {r} outside [1, {r_max}] for k = {k}")));
    }
    Ok(ExponentBound {
        exponent: ExactRational::frac((r - 1) as i128, (k - r) as i128),
        valid_s_range: SRange::up_to(r * (k - r + 2)),
        k,
        source: BoundSource::QuasiDiagonal { r },
        kind: BoundKind::MeanValue,
    })
}

pub(crate) fn delta_value(t: u64, k: u64) -> ExactRational {
    ExactRational::frac((t * (t - 1) * (k + 1)) as i128, (2 * (k - 1)) as i128)
}

/// `Δ_{t,k} = ½t(t−1)(k+1)/(k−1)`, valid for `s >= (k−t)(k+1)`.
pub fn delta(t: u64, k: u64) -> Result<ExponentBound> {
    if k < 3 {
        return Err(out_of_range("k", format!("k = {k} but the near-optimal bound needs k >= 3")));
    }
    if t < 1 || t > k - 1 {
        return Err(out_of_range("t", format!("t = {t} outside [1, {}] for k = {k}", k - 1)));
    }
    Ok(ExponentBound {
        exponent: delta_value(t, k),
        valid_s_range: SRange::at_least((k - t) * (k + 1)),
        k,
        source: BoundSource::NearOptimal { t },
        kind: BoundKind::MeanValue,
    })
}

/// Which choice of `(s_0, κ)` the iteration uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KappaMode {
    /// `s_0 = rρ`, `κ = s_0 + r − (r−1)/(k−r)`, with `ρ = k − r + 1`.
    QuasiDiagonal,
    /// `s_0 = rk`, `κ = (rk − r(r+1)/2)(k+1)/(k−1)`.
    NearOptimal,
}

impl KappaMode {
    pub fn name(self) -> &'static str {
        match self {
            KappaMode::QuasiDiagonal => "quasi-diagonal",
            KappaMode::NearOptimal => "near-optimal",
        }
    }

    pub fn parse(s: &str) -> Option<KappaMode> {
        match s {
            "quasi-diagonal" => Some(KappaMode::QuasiDiagonal),
            "near-optimal" => Some(KappaMode::NearOptimal),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaParams {
    pub k: u64,
    pub r: u64,
    pub mode: KappaMode,
    pub s0: u64,
    pub kappa: ExactRational,
}

pub fn kappa_params(k: u64, r: u64, mode: KappaMode) -> Result<KappaParams> {
    if k < 2 || r < 1 || r > k - 1 {
        return Err(out_of_range("r", format!("r = {r} outside [1, k − 1] for k = {k}")));
    }
    let (s0, kappa) = match mode {
        KappaMode::QuasiDiagonal => {
            let r_max = quasi_diagonal_r_max(k);
            if k < 3 || r > r_max {
                return Err(out_of_range("r", format!("r = {r} outside [1, {r_max}] for k = {k} (quasi-diagonal)")));
            }
            let s0 = r * (k - r + 1);
            let kappa = &ExactRational::from_int(s0 + r) - &ExactRational::frac((r - 1) as i128, (k - r) as i128);
            (s0, kappa)
        }
        KappaMode::NearOptimal => {
            let base = ExactRational::frac((2 * r * k - r * (r + 1)) as i128, 2);
            (r * k, &base * &ExactRational::frac((k + 1) as i128, (k - 1) as i128))
        }
    };
    assert!(kappa <= ExactRational::from_int(s0 + r), "κ exceeds s_0 + r at k = {k}, r = {r}");
    Ok(KappaParams { k, r, mode, s0, kappa })
}
