use alloc::format;
use alloc::vec::Vec;

use crate::exactmath::solve_rational_linear;
use crate::{Error, ExactInt, ExactRational, IntPolynomial, Result};

pub const DEFAULT_MAX_BETA: u32 = 12;

/// Integers `c_l` (`α <= l <= α+β`) and `d_m` (`β <= m <= α+β`) with
/// `c_α + Σ_{l=1}^{β} c_{α+l}(x+1)^{α+l} = Σ_{m=β}^{α+β} d_m x^m` and `d_β ≠ 0`.
///
/// Normalized so that all entries have gcd 1 and `d_β > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma32Certificate {
    pub alpha: u32,
    pub beta: u32,
    /// `c[i] = c_{α+i}` for `0 <= i <= β`.
    pub c: Vec<ExactInt>,
    /// `d[i] = d_{β+i}` for `0 <= i <= α`.
    pub d: Vec<ExactInt>,
}

impl Lemma32Certificate {
    pub fn d_beta(&self) -> &ExactInt {
        &self.d[0]
    }

    pub fn lhs(&self) -> IntPolynomial {
        let mut p = IntPolynomial::constant(self.c[0].clone());
        for (l, c) in self.c.iter().enumerate().skip(1) {
            let mono = IntPolynomial::monomial((self.alpha + l as u32) as usize, c.clone());
            p = &p + &mono.expand_shift(&ExactInt::ONE);
        }
        p
    }

    pub fn rhs(&self) -> IntPolynomial {
        let mut coeffs = alloc::vec![ExactInt::ZERO; self.beta as usize];
        coeffs.extend(self.d.iter().cloned());
        IntPolynomial::new(coeffs)
    }

    /// Both sides agree as polynomials and `d_β ≠ 0`.
    pub fn verify(&self) -> bool {
        !self.d_beta().is_zero() && self.lhs() == self.rhs()
    }
}

fn q(v: ExactInt) -> ExactRational {
    ExactRational::from_int(v)
}

/// Builds the certificate by solving `Σ_l C(α+l, m) y_{α+l} = μ_m`
/// (`μ_m = [m = β]`) exactly, cross-checked against the equivalent
/// Vandermonde system `Σ_l (α+l)^m y_{α+l} = β! μ_m`, then clearing
/// denominators with their least common multiple.
pub fn lemma32_solve(alpha: u32, beta: u32, max_beta: u32) -> Result<Lemma32Certificate> {
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidParameter(format!("alpha and beta must be >= 1 (got {alpha}, {beta})")));
    }
    if beta > max_beta {
        return Err(Error::OutOfRange { what: "beta", detail: format!("{beta} exceeds the configured maximum {max_beta}") });
    }
    let n = beta as usize;
    let mu = |m: usize| if m == n { ExactInt::ONE } else { ExactInt::ZERO };
    let binom: Vec<Vec<ExactRational>> = (1..=n)
        .map(|m| (1..=n).map(|l| q(ExactInt::binomial((alpha as usize + l) as u64, m as u64))).collect())
        .collect();
    let rhs: Vec<ExactRational> = (1..=n).map(|m| q(mu(m))).collect();
    let y = solve_rational_linear(&binom, &rhs)?;

    let vander: Vec<Vec<ExactRational>> = (1..=n)
        .map(|m| (1..=n).map(|l| q(ExactInt::from(alpha as usize + l).pow(m as u32))).collect())
        .collect();
    let bf = ExactInt::factorial(beta);
    let vrhs: Vec<ExactRational> = (1..=n).map(|m| q(&bf * &mu(m))).collect();
    let y2 = solve_rational_linear(&vander, &vrhs)?;
    assert_eq!(y, y2, "falling-factorial and power systems must share their solution");

    let den = y.iter().fold(ExactInt::ONE, |acc, v| acc.lcm(v.denom()));
    let mut c: Vec<ExactInt> = core::iter::once(ExactInt::ZERO)
        .chain(y.iter().map(|v| {
            let scaled = v * &q(den.clone());
            scaled.numer().clone()
        }))
        .collect();
    let mut cert = Lemma32Certificate { alpha, beta, c: c.clone(), d: Vec::new() };
    let lhs = cert.lhs();
    c[0] = -lhs.coeff(0);
    cert.c = c;
    let lhs = cert.lhs();
    for m in 0..n {
        debug_assert!(lhs.coeff(m).is_zero(), "coefficient of x^{m} must vanish");
    }
    cert.d = (n..=(alpha as usize + n)).map(|m| lhs.coeff(m)).collect();

    let g = cert.c.iter().chain(&cert.d).fold(ExactInt::ZERO, |acc, v| acc.gcd(v));
    let sign = if cert.d_beta().is_negative() { -ExactInt::ONE } else { ExactInt::ONE };
    let scale = &g * &sign;
    for v in cert.c.iter_mut().chain(cert.d.iter_mut()) {
        *v = &*v / &scale;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|x| ExactInt::from(*x)).collect()
    }

    #[test]
    fn small_certificates() {
        let c = lemma32_solve(1, 1, DEFAULT_MAX_BETA).unwrap();
        assert_eq!((c.c.clone(), c.d.clone()), (ints(&[-1, 1]), ints(&[2, 1])));
        let c = lemma32_solve(2, 1, DEFAULT_MAX_BETA).unwrap();
        assert_eq!((c.c.clone(), c.d.clone()), (ints(&[-1, 1]), ints(&[3, 3, 1])));
        assert!(c.verify());
    }

    #[test]
    fn all_small_certificates_verify() {
        for alpha in 1..=6 {
            for beta in 1..=6 {
                let c = lemma32_solve(alpha, beta, DEFAULT_MAX_BETA).unwrap();
                assert!(c.verify(), "alpha={alpha} beta={beta}");
                assert!(c.d_beta().is_positive());
                let g = c.c.iter().chain(&c.d).fold(ExactInt::ZERO, |a, v| a.gcd(v));
                assert!(g.is_one());
                assert_eq!(c.c.len(), beta as usize + 1);
                assert_eq!(c.d.len(), alpha as usize + 1);
            }
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = lemma32_solve(2, 3, DEFAULT_MAX_BETA).unwrap();
        c.d[1] = &c.d[1] + &ExactInt::ONE;
        assert!(!c.verify());
    }

    #[test]
    fn guards() {
        assert!(lemma32_solve(0, 1, DEFAULT_MAX_BETA).is_err());
        assert!(matches!(lemma32_solve(1, 13, DEFAULT_MAX_BETA), Err(Error::OutOfRange { .. })));
        assert!(lemma32_solve(1, 13, 13).unwrap().verify());
    }
}
