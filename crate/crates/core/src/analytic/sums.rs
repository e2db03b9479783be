use core::ops::RangeInclusive;

use num_complex::Complex64;

use super::coeffs::{Accumulator, CoefficientVector, Phase};
use crate::{Error, ExactRational, Result};

/// `f_k(α; X) = Σ_{1 <= x <= X} e(ψ(x; α))`.
pub fn eval_f(coeffs: &CoefficientVector, x: u64) -> Result<Complex64> {
    if x < 1 {
        return Err(Error::InvalidParameter("X must be at least 1".into()));
    }
    Ok(eval_f_range(coeffs, 1..=x))
}

/// Partial sum over `x` in `range`, for callers that split the summation.
/// Partial sums over consecutive ranges add up to the full sum.
pub fn eval_f_range(coeffs: &CoefficientVector, range: RangeInclusive<u64>) -> Complex64 {
    let phase = Phase::new(coeffs);
    if let Phase::Small { den: 1, .. } = phase {
        let n = if range.is_empty() { 0 } else { range.end() - range.start() + 1 };
        return Complex64::new(n as f64, 0.0);
    }
    let mut acc = Accumulator::default();
    for x in range {
        acc.add(phase.unit(x));
    }
    acc.value()
}

/// `g_k(α; X) = Σ_{1 <= x <= X} e(α x^k)`.
pub fn eval_g(alpha: &ExactRational, k: usize, x: u64) -> Result<Complex64> {
    eval_f(&CoefficientVector::monomial(alpha.clone(), k)?, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> ExactRational {
        ExactRational::frac(n, d)
    }

    #[test]
    fn zero_coefficients_give_x() {
        let c = CoefficientVector::new(vec![ExactRational::zero(); 4]).unwrap();
        assert_eq!(eval_f(&c, 1000).unwrap(), Complex64::new(1000.0, 0.0));
        assert_eq!(eval_g(&ExactRational::zero(), 3, 17).unwrap(), Complex64::new(17.0, 0.0));
    }

    #[test]
    fn alternating_examples() {
        let c = CoefficientVector::new(vec![q(1, 2)]).unwrap();
        assert!(eval_f(&c, 4).unwrap().norm() < 1e-12);
        assert!(eval_g(&q(1, 2), 2, 4).unwrap().norm() < 1e-12);
    }

    #[test]
    fn g_against_direct_summation() {
        // Oracle sums in reverse order with a plain float phase.
        for qd in [3i128, 7, 11, 101] {
            for k in 1..=4usize {
                let x = 500u64;
                let got = eval_g(&q(1, qd), k, x).unwrap();
                let mut want = Complex64::new(0.0, 0.0);
                for n in (1..=x).rev() {
                    let m = (n as u128).pow(k as u32) % qd as u128;
                    let t = core::f64::consts::TAU * m as f64 / qd as f64;
                    want += Complex64::new(libm::cos(t), libm::sin(t));
                }
                assert!((got - want).norm() < 1e-6, "q={qd} k={k}");
            }
        }
    }

    #[test]
    fn ranges_combine() {
        let c = CoefficientVector::new(vec![q(3, 17), q(-5, 23), q(1, 9)]).unwrap();
        let whole = eval_f(&c, 1000).unwrap();
        let split = eval_f_range(&c, 1..=333) + eval_f_range(&c, 334..=1000);
        assert!((whole - split).norm() < 1e-9);
    }

    #[test]
    fn invalid_x() {
        let c = CoefficientVector::new(vec![q(1, 3)]).unwrap();
        assert!(eval_f(&c, 0).is_err());
    }

    proptest! {
        #[test]
        fn modulus_at_most_x(nums in proptest::collection::vec((-1000i128..1000, 1i128..500), 1..5), x in 1u64..400) {
            let c = CoefficientVector::new(nums.iter().map(|&(n, d)| q(n, d)).collect()).unwrap();
            prop_assert!(eval_f(&c, x).unwrap().norm() <= x as f64 + 1e-9);
        }

        #[test]
        fn integral_coefficients_give_exactly_x(nums in proptest::collection::vec(-50i128..50, 1..5), x in 1u64..300) {
            let c = CoefficientVector::new(nums.iter().map(|&n| q(n, 1)).collect()).unwrap();
            prop_assert_eq!(eval_f(&c, x).unwrap(), Complex64::new(x as f64, 0.0));
        }
    }
}
