use alloc::format;
use alloc::vec::Vec;

use super::bounds::{delta_value, quasi_diagonal_r_max, BoundKind, BoundSource, ExponentBound, SRange};
use crate::{Error, ExactRational, Result};

/// Theorem families the envelope may draw on. The trivial bound is always present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    OptimalRange,
    NearOptimal,
    QuasiDiagonal,
    QuasiDiagonalUniform,
    Holder,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 5] = [
        BoundFamily::OptimalRange,
        BoundFamily::NearOptimal,
        BoundFamily::QuasiDiagonal,
        BoundFamily::QuasiDiagonalUniform,
        BoundFamily::Holder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::OptimalRange => "optimal-range",
            BoundFamily::NearOptimal => "near-optimal",
            BoundFamily::QuasiDiagonal => "quasi-diagonal",
            BoundFamily::QuasiDiagonalUniform => "quasi-diagonal-uniform",
            BoundFamily::Holder => "holder",
        }
    }

    pub fn parse(s: &str) -> Option<BoundFamily> {
        BoundFamily::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Every applicable upper bound for `λ*_{s,k}`, with the minimum marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub k: u64,
    pub s: u64,
    pub bounds: Vec<ExponentBound>,
    /// Index of the first bound attaining the minimum.
    pub min_index: usize,
}

impl Envelope {
    pub fn minimum(&self) -> &ExponentBound {
        &self.bounds[self.min_index]
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.bounds[i].exponent == self.minimum().exponent
    }
}

pub fn envelope(k: u64, s: u64) -> Result<Envelope> {
    envelope_with(k, s, &BoundFamily::ALL)
}

pub fn envelope_with(k: u64, s: u64, families: &[BoundFamily]) -> Result<Envelope> {
    if k < 3 {
        return Err(Error::OutOfRange { what: "k", detail: format!("k = {k} but the envelope needs k >= 3") });
    }
    if s < 1 {
        return Err(Error::OutOfRange { what: "s", detail: "s must be at least 1".into() });
    }
    let mut bounds = Vec::new();
    bounds.push(bound(k, ExactRational::from_int(2 * s), SRange::ALL, BoundSource::Trivial));
    bounds.extend(direct_bounds(k, s, families));

    if families.contains(&BoundFamily::Holder) {
        if let Some(h) = holder_bound(k, s, families) {
            bounds.push(h);
        }
    }

    let mut min_index = 0;
    for (i, b) in bounds.iter().enumerate() {
        if b.exponent < bounds[min_index].exponent {
            min_index = i;
        }
    }
    Ok(Envelope { k, s, bounds, min_index })
}

fn bound(k: u64, exponent: ExactRational, range: SRange, source: BoundSource) -> ExponentBound {
    ExponentBound { exponent, valid_s_range: range, k, source, kind: BoundKind::MeanValue }
}

/// Theorem bounds that apply at `s` directly, without interpolation.
fn direct_bounds(k: u64, s: u64, families: &[BoundFamily]) -> Vec<ExponentBound> {
    let mut out = Vec::new();
    let main = ExactRational::from_int(2 * s as i128 - (k * (k + 1) / 2) as i128);

    if families.contains(&BoundFamily::OptimalRange) && s >= k * k - 1 {
        out.push(bound(k, main.clone(), SRange::at_least(k * k - 1), BoundSource::OptimalRange));
    }
    if families.contains(&BoundFamily::NearOptimal) {
        for t in 1..k {
            let lo = (k - t) * (k + 1);
            if s >= lo {
                out.push(bound(k, &main + &delta_value(t, k), SRange::at_least(lo), BoundSource::NearOptimal { t }));
            }
        }
    }
    if families.contains(&BoundFamily::QuasiDiagonal) {
        for r in 1..=quasi_diagonal_r_max(k) {
            let hi = r * (k - r + 2);
            if s <= hi {
                let nu = ExactRational::frac((r - 1) as i128, (k - r) as i128);
                out.push(bound(k, &ExactRational::from_int(s) + &nu, SRange::up_to(hi), BoundSource::QuasiDiagonal { r }));
            }
        }
    }
    // s <= k²/4 + k, kept integral as 4s <= k² + 4k.
    if families.contains(&BoundFamily::QuasiDiagonalUniform) && k >= 4 && 4 * s <= k * k + 4 * k {
        let hi = (k * k + 4 * k) / 4;
        out.push(bound(k, ExactRational::from_int(s + 1), SRange::up_to(hi), BoundSource::QuasiDiagonalUniform));
    }
    out
}

/// Best `(s/t)·λ_t` over anchors `s < t <= k² − 1`.
///
/// Past `k² − 1` the optimal-range exponent gives `2s − s·k(k+1)/(2t)`,
/// which only grows with `t`, so larger anchors never help.
fn holder_bound(k: u64, s: u64, families: &[BoundFamily]) -> Option<ExponentBound> {
    let mut best: Option<(ExactRational, u64)> = None;
    for t in (s + 1)..=(k * k - 1) {
        let Some(lambda_t) = direct_bounds(k, t, families).into_iter().map(|b| b.exponent).min() else {
            continue;
        };
        let v = &ExactRational::frac(s as i128, t as i128) * &lambda_t;
        if best.as_ref().map_or(true, |(b, _)| v < *b) {
            best = Some((v, t));
        }
    }
    best.map(|(v, t)| bound(k, v, SRange { min: 1, max: Some(t - 1) }, BoundSource::Holder { anchor: t }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> ExactRational {
        ExactRational::frac(n, d)
    }

    #[test]
    fn optimal_range_example() {
        let e = envelope(3, 8).unwrap();
        assert_eq!(e.minimum().exponent, q(10, 1));
        assert_eq!(e.minimum().source, BoundSource::OptimalRange);
        assert!(e.bounds.iter().any(|b| b.source == BoundSource::NearOptimal { t: 1 } && b.exponent == q(10, 1)));
    }

    #[test]
    fn uniform_quasi_diagonal_example() {
        let e = envelope(4, 8).unwrap();
        let uni = e.bounds.iter().find(|b| b.source == BoundSource::QuasiDiagonalUniform).unwrap();
        assert_eq!(uni.exponent, q(9, 1));
        // r = 2 is sharper here: 8 + 1/2.
        assert_eq!(e.minimum().exponent, q(17, 2));
        assert_eq!(e.minimum().source, BoundSource::QuasiDiagonal { r: 2 });
    }

    #[test]
    fn r_equals_one_example() {
        let e = envelope(5, 3).unwrap();
        assert_eq!(e.minimum().exponent, q(3, 1));
        assert_eq!(e.minimum().source, BoundSource::QuasiDiagonal { r: 1 });
    }

    #[test]
    fn trivial_only_when_nothing_applies() {
        let e = envelope_with(3, 5, &[]).unwrap();
        assert_eq!(e.bounds.len(), 1);
        assert_eq!(e.minimum().exponent, q(10, 1));
    }

    #[test]
    fn holder_interpolates_from_anchor() {
        // k = 3, s = 5: nothing applies directly except near-optimal t = 2
        // (s >= 4, giving 4 + 2 = 6); anchor t = 8 gives (5/8)·10 = 25/4.
        let e = envelope(3, 5).unwrap();
        let h = e.bounds.iter().find(|b| b.source.tag() == "holder").unwrap();
        assert_eq!(h.exponent, q(25, 4));
        assert_eq!(e.minimum().exponent, q(6, 1));
    }

    #[test]
    fn theorem_families_only_lower_minimum() {
        for k in 3..9 {
            for s in 1..(k * k + 3) {
                let full = envelope(k, s).unwrap().minimum().exponent.clone();
                for skip in BoundFamily::ALL {
                    let fams: Vec<_> = BoundFamily::ALL.into_iter().filter(|f| *f != skip).collect();
                    assert!(envelope_with(k, s, &fams).unwrap().minimum().exponent >= full);
                }
            }
        }
    }

    #[test]
    fn rejects_small_k() {
        assert!(envelope(2, 3).is_err());
        assert!(envelope(3, 0).is_err());
    }
}
