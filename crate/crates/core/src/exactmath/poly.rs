use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::ExactInt;

/// Dense univariate integer polynomial, coefficients in ascending degree.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(ExactInt::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| ExactInt::from(*c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(deg: usize, c: ExactInt) -> Self {
        let mut coeffs = vec![ExactInt::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> ExactInt {
        self.coeffs.get(deg).cloned().unwrap_or(ExactInt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        self.coeffs.iter().rev().fold(ExactInt::ZERO, |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &ExactInt::from(i))
                .collect(),
        )
    }

    /// Returns `q` with `q(x) = p(x + shift)`, by Horner's scheme over `x + shift`.
    pub fn expand_shift(&self, shift: &ExactInt) -> Self {
        let mut acc: Vec<ExactInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (x + shift) + c
            let mut next = vec![ExactInt::ZERO; acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] += &(a * shift);
            }
            next[0] += c;
            acc = next;
        }
        Self::new(acc)
    }
}

/// `q(x) = p(x + shift)`.
pub fn poly_expand_shift(p: &IntPolynomial, shift: &ExactInt) -> IntPolynomial {
    p.expand_shift(shift)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![ExactInt::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&alloc::format!("{mag}"));
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&alloc::format!("x^{i}")),
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn x_pow(n: usize) -> IntPolynomial {
        IntPolynomial::monomial(n, ExactInt::ONE)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(x_pow(2).expand_shift(&ExactInt::ONE), IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(IntPolynomial::zero().expand_shift(&ExactInt::from(17)), IntPolynomial::zero());
        // oracle: (x+1)^3 by repeated multiplication
        let x_plus_1 = IntPolynomial::from_i64(&[1, 1]);
        let cube = &(&x_plus_1 * &x_plus_1) * &x_plus_1;
        assert_eq!(x_pow(3).expand_shift(&ExactInt::ONE), cube);
        assert_eq!(cube, IntPolynomial::from_i64(&[1, 3, 3, 1]));
    }

    #[test]
    fn zero_is_empty_and_trimmed() {
        let p = IntPolynomial::from_i64(&[0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(IntPolynomial::from_i64(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[1, -2, 1]).to_string(), "x^2 - 2x + 1");
        assert_eq!(IntPolynomial::from_i64(&[0, 0, -3]).to_string(), "-3x^2");
    }

    proptest! {
        #[test]
        fn shift_round_trip(coeffs in proptest::collection::vec(-50i64..50, 0..8), a in -20i64..20) {
            let p = IntPolynomial::from_i64(&coeffs);
            let a = ExactInt::from(a);
            prop_assert_eq!(p.expand_shift(&a).expand_shift(&-&a), p);
        }

        #[test]
        fn shift_agrees_with_evaluation(coeffs in proptest::collection::vec(-50i64..50, 0..8), a in -20i64..20, x in -20i64..20) {
            let p = IntPolynomial::from_i64(&coeffs);
            let q = p.expand_shift(&ExactInt::from(a));
            prop_assert_eq!(q.eval(&ExactInt::from(x)), p.eval(&ExactInt::from(x + a)));
        }
    }
}
