use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ExactInt;
use crate::{Error, Result};

/// Rational number kept in lowest terms with a positive denominator.
///
/// Normalization happens after every operation, so `==`, `Ord` and `Hash`
/// are all structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: ExactInt,
    den: ExactInt,
}

impl ExactRational {
    pub fn new(num: ExactInt, den: ExactInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    /// `n/d` from machine integers. Panics if `d == 0`.
    pub fn frac(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        Self::normalized(ExactInt::from(n), ExactInt::from(d))
    }

    pub fn from_int(v: impl Into<ExactInt>) -> Self {
        ExactRational { num: v.into(), den: ExactInt::ONE }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn normalized(num: ExactInt, den: ExactInt) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (&num / &g, &den / &g)
        };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        if n.is_zero() {
            d = ExactInt::ONE;
        }
        ExactRational { num: n, den: d }
    }

    pub fn numer(&self) -> &ExactInt {
        &self.num
    }

    pub fn denom(&self) -> &ExactInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    pub fn abs(&self) -> Self {
        ExactRational { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    pub fn floor(&self) -> ExactInt {
        self.num.div_floor(&self.den)
    }

    pub fn ceil(&self) -> ExactInt {
        -(-&self.num).div_floor(&self.den)
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        ExactRational { num: self.num.mod_floor(&self.den), den: self.den.clone() }
    }

    /// Distance to the nearest integer, `‖x‖`.
    pub fn dist_to_nearest_int(&self) -> Self {
        let f = self.fract();
        let g = &Self::one() - &f;
        if f <= g {
            f
        } else {
            g
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        let e = exp.unsigned_abs();
        let r = ExactRational { num: self.num.pow(e), den: self.den.pow(e) };
        if exp < 0 {
            r.recip().expect("zero to a negative power")
        } else {
            r
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.num.to_i128(), self.den.to_i128()) {
            let (nf, df) = (n as f64, d as f64);
            if nf.abs() < 9.0e15 && df < 9.0e15 {
                return nf / df;
            }
        }
        // Scale so the integer quotient carries about 64 significant bits.
        let (n, d) = (self.num.to_big(), self.den.to_big());
        let shift = 64i64 - (n.bits() as i64 - d.bits() as i64);
        let q: BigInt = if shift >= 0 { (n << shift as u64) / d } else { n / (d << (-shift) as u64) };
        q.to_f64().unwrap_or(f64::NAN) * libm::exp2(-(shift as f64))
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<ExactInt> for ExactRational {
    fn from(v: ExactInt) -> Self {
        Self::from_int(v)
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n: ExactInt = n.parse()?;
                let d: ExactInt = d.parse()?;
                ExactRational::new(n, d)
            }
            None => Ok(ExactRational::from_int(s.parse::<ExactInt>()?)),
        }
    }
}

impl ExactRational {
    pub fn to_string_exact(&self) -> String {
        format!("{self}")
    }
}

fn add_ref(a: &ExactRational, b: &ExactRational) -> ExactRational {
    if a.den == b.den {
        return ExactRational::normalized(&a.num + &b.num, a.den.clone());
    }
    ExactRational::normalized(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
}

fn sub_ref(a: &ExactRational, b: &ExactRational) -> ExactRational {
    add_ref(a, &-b)
}

fn mul_ref(a: &ExactRational, b: &ExactRational) -> ExactRational {
    ExactRational::normalized(&a.num * &b.num, &a.den * &b.den)
}

fn div_ref(a: &ExactRational, b: &ExactRational) -> ExactRational {
    assert!(!b.is_zero(), "division by zero");
    ExactRational::normalized(&a.num * &b.den, &a.den * &b.num)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                $f(self, rhs)
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                $f(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                $f(&self, rhs)
            }
        }
        impl<'a> $trait<ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        -&self
    }
}
