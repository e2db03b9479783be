use alloc::format;

use super::bounds::{BoundKind, BoundSource, ExponentBound, SRange};
use crate::{Error, ExactRational, Result};

fn need(what: &'static str, k: u64, min: u64) -> Result<()> {
    if k < min {
        return Err(Error::OutOfRange { what, detail: format!("needs k >= {min}, got k = {k}") });
    }
    Ok(())
}

fn bound(k: u64, exponent: ExactRational, source: BoundSource, kind: BoundKind) -> ExponentBound {
    ExponentBound { exponent, valid_s_range: SRange::ALL, k, source, kind }
}

/// Weyl-sum saving `σ(k) = 1 / (2k(k−2))`.
pub fn sigma(k: u64) -> Result<ExponentBound> {
    need("sigma", k, 4)?;
    Ok(bound(k, ExactRational::frac(1, (2 * k * (k - 2)) as i128), BoundSource::WeylSum, BoundKind::Weyl))
}

/// Fractional-parts exponent `τ(k) = 1 / (4k(k−2))`.
pub fn tau(k: u64) -> Result<ExponentBound> {
    need("tau", k, 4)?;
    Ok(bound(k, ExactRational::frac(1, (4 * k * (k - 2)) as i128), BoundSource::FractionalParts, BoundKind::Weyl))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TarryBound {
    pub k: u64,
    /// Largest `t` with `t(t−1) < 2k(k+1)/(k+2)`.
    pub t_star: u64,
    /// `(k + 1 − t*)(k + 2)`.
    pub bound: u64,
}

impl TarryBound {
    /// The closed-form statement `k² − √2·k^{3/2} + 4k`, which the scan never exceeds.
    pub fn statement_bound(&self) -> f64 {
        let k = self.k as f64;
        k * k - libm::sqrt(2.0) * libm::pow(k, 1.5) + 4.0 * k
    }

    pub fn as_bound(&self) -> ExponentBound {
        bound(self.k, ExactRational::from_int(self.bound), BoundSource::TarryScan, BoundKind::Tarry)
    }
}

pub fn tarry(k: u64) -> Result<TarryBound> {
    need("tarry", k, 2)?;
    // t(t−1)(k+2) < 2k(k+1), kept integral.
    let ok = |t: u64| t * (t - 1) * (k + 2) < 2 * k * (k + 1);
    let mut t = 1;
    while t < k && ok(t + 1) {
        t += 1;
    }
    Ok(TarryBound { k, t_star: t, bound: (k + 1 - t) * (k + 2) })
}

/// `C_k <= 2k² − 2`.
pub fn hua_c(k: u64) -> Result<ExponentBound> {
    need("C_k", k, 3)?;
    Ok(bound(k, ExactRational::from_int(2 * k * k - 2), BoundSource::HuaThreshold, BoundKind::Hua))
}

/// `S_k <= 2k² − 2k`.
pub fn hua_s(k: u64) -> Result<ExponentBound> {
    need("S_k", k, 3)?;
    Ok(bound(k, ExactRational::from_int(2 * k * k - 2 * k), BoundSource::HuaThreshold, BoundKind::Hua))
}

/// Everything at once; each entry fails independently when `k` is too small for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiscExponents {
    pub k: u64,
    pub sigma: Result<ExponentBound>,
    pub tau: Result<ExponentBound>,
    pub tarry: Result<TarryBound>,
    pub c_k: Result<ExponentBound>,
    pub s_k: Result<ExponentBound>,
}

pub fn misc_exponents(k: u64) -> MiscExponents {
    MiscExponents { k, sigma: sigma(k), tau: tau(k), tarry: tarry(k), c_k: hua_c(k), s_k: hua_s(k) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = misc_exponents(8);
        assert_eq!(m.sigma.unwrap().exponent, ExactRational::frac(1, 96));
        let t = m.tarry.unwrap();
        assert_eq!((t.t_star, t.bound), (4, 50));
        let m = misc_exponents(3);
        assert_eq!(m.c_k.unwrap().exponent, ExactRational::from_int(16));
        assert_eq!(m.s_k.unwrap().exponent, ExactRational::from_int(12));
        assert!(matches!(m.sigma, Err(Error::OutOfRange { .. })));
        assert_eq!(tau(4).unwrap().exponent, ExactRational::frac(1, 32));
        assert!(tarry(1).is_err());
    }

    #[test]
    fn tarry_scan_against_float_scan() {
        for k in 2..=200u64 {
            let limit = 2.0 * (k * (k + 1)) as f64 / (k + 2) as f64;
            let t_star = (1..=k).filter(|&t| ((t * (t - 1)) as f64) < limit).max().unwrap();
            let got = tarry(k).unwrap();
            assert_eq!(got.t_star, t_star, "k = {k}");
            assert!((got.bound as f64) <= got.statement_bound() + 1e-9, "k = {k}");
        }
    }
}
