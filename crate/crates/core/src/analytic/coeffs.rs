use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::exactmath::mul_mod_u64;
use crate::{Error, ExactInt, ExactRational, Result};

/// `(α_1, …, α_k)`, the coefficients of `ψ(x; α) = α_1 x + … + α_k x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    alphas: Vec<ExactRational>,
}

impl CoefficientVector {
    pub fn new(alphas: Vec<ExactRational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("need at least one coefficient".into()));
        }
        Ok(CoefficientVector { alphas })
    }

    /// Only the degree-`k` coefficient is nonzero.
    pub fn monomial(alpha: ExactRational, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        let mut alphas = alloc::vec![ExactRational::zero(); k];
        alphas[k - 1] = alpha;
        Ok(CoefficientVector { alphas })
    }

    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[ExactRational] {
        &self.alphas
    }

    /// `ψ(x; α)` exactly, not reduced.
    pub fn phase_exact(&self, x: &ExactInt) -> ExactRational {
        let mut acc = ExactRational::zero();
        for a in self.alphas.iter().rev() {
            acc = &(&acc + a) * &ExactRational::from_int(x.clone());
        }
        acc
    }
}

/// Evaluates `ψ(x; α) mod 1` exactly as `m / D` with `D` the common denominator.
#[derive(Clone, Debug)]
pub(crate) enum Phase {
    Small { den: u64, nums: Vec<u64> },
    Big { den: ExactInt, nums: Vec<ExactInt> },
}

impl Phase {
    pub fn new(c: &CoefficientVector) -> Self {
        let den = c.alphas.iter().fold(ExactInt::ONE, |d, a| d.lcm(a.denom()));
        let nums: Vec<ExactInt> =
            c.alphas.iter().map(|a| (&(a.numer() * &den) / a.denom()).mod_floor(&den)).collect();
        match den.to_u64() {
            Some(d) => Phase::Small { den: d, nums: nums.iter().map(|n| n.to_u64().expect("reduced below den")).collect() },
            None => Phase::Big { den, nums },
        }
    }

    /// Residue `m` in `[0, D)` with `ψ(x) ≡ m / D (mod 1)`, together with `D`.
    pub fn residue(&self, x: u64) -> (ExactRational, f64) {
        match self {
            Phase::Small { den, .. } => {
                let m = self.residue_small(x);
                (ExactRational::frac(m as i128, *den as i128), m as f64 / *den as f64)
            }
            Phase::Big { den, nums } => {
                let xm = ExactInt::from(x).mod_floor(den);
                let mut acc = ExactInt::ZERO;
                for n in nums.iter().rev() {
                    acc = (&(&acc + n) * &xm).mod_floor(den);
                }
                let r = ExactRational::new(acc, den.clone()).expect("nonzero denominator");
                let f = r.to_f64();
                (r, f)
            }
        }
    }

    fn residue_small(&self, x: u64) -> u64 {
        let Phase::Small { den, nums } = self else { unreachable!() };
        if *den == 1 {
            return 0;
        }
        let xm = x % den;
        let mut acc = 0u64;
        for &n in nums.iter().rev() {
            let s = ((acc as u128 + n as u128) % *den as u128) as u64;
            acc = mul_mod_u64(s, xm, *den);
        }
        acc
    }

    /// `e(ψ(x))`, evaluated once after exact reduction.
    pub fn unit(&self, x: u64) -> Complex64 {
        let t = match self {
            Phase::Small { den, .. } => {
                let m = self.residue_small(x);
                // Fold into (−1/2, 1/2] before scaling so the angle stays small.
                let m = m as f64;
                let d = *den as f64;
                if m > d / 2.0 {
                    (m - d) / d
                } else {
                    m / d
                }
            }
            Phase::Big { .. } => {
                let f = self.residue(x).1;
                if f > 0.5 {
                    f - 1.0
                } else {
                    f
                }
            }
        };
        e(t)
    }
}

/// `e(t) = exp(2πit)`.
pub(crate) fn e(t: f64) -> Complex64 {
    let (s, c) = libm::sincos(TAU * t);
    Complex64::new(c, s)
}

/// Compensated (Neumaier) complex summation; the result depends only on the
/// order of the added terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    sum: Complex64,
    comp: Complex64,
}

impl Accumulator {
    pub fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier(self.sum.re, v.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, v.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, v: f64, comp: &mut f64) -> f64 {
    let t = sum + v;
    if libm::fabs(sum) >= libm::fabs(v) {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}
