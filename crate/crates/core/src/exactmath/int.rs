use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision signed integer with an `i128` fast path.
///
/// Every operation on two small operands uses checked arithmetic and
/// escalates to a heap-allocated big integer on overflow. Values that fit
/// in `i128` are always stored in the small form, so equality and hashing
/// are canonical.
#[derive(Clone)]
pub struct ExactInt(Repr);

#[derive(Clone)]
enum Repr {
    Small(i128),
    Big(BigInt),
}

use Repr::{Big, Small};

impl ExactInt {
    pub const ZERO: ExactInt = ExactInt(Small(0));
    pub const ONE: ExactInt = ExactInt(Small(1));

    pub const fn from_i128(v: i128) -> Self {
        ExactInt(Small(v))
    }

    pub fn from_big(v: BigInt) -> Self {
        match v.to_i128() {
            Some(s) => ExactInt(Small(s)),
            None => ExactInt(Big(v)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Small(v) => BigInt::from(*v),
            Big(b) => b.clone(),
        }
    }

    pub fn to_i128(&self) -> Option<i128> {
        match &self.0 {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_i128().and_then(|v| u64::try_from(v).ok())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_i128().and_then(|v| i64::try_from(v).ok())
    }

    /// True when the value is held in the fixed-width representation.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Small(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Small(1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Small(v) => v.signum() as i32,
            Big(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> ExactInt {
        match &self.0 {
            Small(v) => match v.checked_abs() {
                Some(a) => ExactInt(Small(a)),
                None => ExactInt::from_big(BigInt::from(*v).abs()),
            },
            Big(b) => ExactInt::from_big(b.abs()),
        }
    }

    pub fn pow(&self, mut exp: u32) -> ExactInt {
        let mut base = self.clone();
        let mut acc = ExactInt::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Greatest common divisor, always non-negative; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ExactInt) -> ExactInt {
        if let (Small(a), Small(b)) = (&self.0, &other.0) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            if let Ok(v) = i128::try_from(x) {
                return ExactInt(Small(v));
            }
        }
        ExactInt::from_big(self.to_big().gcd(&other.to_big()))
    }

    pub fn lcm(&self, other: &ExactInt) -> ExactInt {
        if self.is_zero() || other.is_zero() {
            return ExactInt::ZERO;
        }
        let g = self.gcd(other);
        (&(self / &g) * other).abs()
    }

    /// Floor division. Panics on a zero divisor.
    pub fn div_floor(&self, other: &ExactInt) -> ExactInt {
        if let (Small(a), Small(b)) = (&self.0, &other.0) {
            assert!(*b != 0, "division by zero");
            if let Some(q) = a.checked_div(*b) {
                let r = a - q * b;
                if r != 0 && ((r < 0) != (*b < 0)) {
                    return ExactInt(Small(q - 1));
                }
                return ExactInt(Small(q));
            }
        }
        ExactInt::from_big(self.to_big().div_floor(&other.to_big()))
    }

    /// Remainder with the sign of the divisor (pairs with [`div_floor`](Self::div_floor)).
    pub fn mod_floor(&self, other: &ExactInt) -> ExactInt {
        if let (Small(a), Small(b)) = (&self.0, &other.0) {
            assert!(*b != 0, "division by zero");
            if let Some(r) = a.checked_rem(*b) {
                if r != 0 && ((r < 0) != (*b < 0)) {
                    return ExactInt(Small(r + b));
                }
                return ExactInt(Small(r));
            }
        }
        ExactInt::from_big(self.to_big().mod_floor(&other.to_big()))
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Small(v) => *v as f64,
            Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Base-2 logarithm of a positive value, accurate for values far beyond `f64` range.
    pub fn log2(&self) -> f64 {
        match &self.0 {
            Small(v) => libm::log2(*v as f64),
            Big(b) => {
                let bits = b.bits();
                if bits <= 1000 {
                    return libm::log2(b.to_f64().unwrap_or(f64::NAN));
                }
                let shift = bits - 64;
                let top = (b >> shift).to_f64().unwrap_or(f64::NAN);
                libm::log2(top) + shift as f64
            }
        }
    }

    /// Number of bits in the magnitude.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Small(v) => 128 - v.unsigned_abs().leading_zeros() as u64,
            Big(b) => b.bits(),
        }
    }

    /// Big-endian magnitude bytes without leading zeros (empty for zero).
    pub fn magnitude_be_bytes(&self) -> Vec<u8> {
        match &self.0 {
            Small(v) => {
                let bytes = v.unsigned_abs().to_be_bytes();
                let first = bytes.iter().position(|b| *b != 0).unwrap_or(bytes.len());
                bytes[first..].to_vec()
            }
            Big(b) => {
                if b.is_zero() {
                    Vec::new()
                } else {
                    b.magnitude().to_bytes_be()
                }
            }
        }
    }

    pub fn from_sign_magnitude(negative: bool, magnitude: &[u8]) -> ExactInt {
        let sign = if magnitude.iter().all(|b| *b == 0) {
            Sign::NoSign
        } else if negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        ExactInt::from_big(BigInt::from_bytes_be(sign, magnitude))
    }

    pub fn factorial(n: u32) -> ExactInt {
        (2..=n as i128).fold(ExactInt::ONE, |acc, v| acc * ExactInt::from(v))
    }

    pub fn binomial(n: u64, k: u64) -> ExactInt {
        if k > n {
            return ExactInt::ZERO;
        }
        let k = k.min(n - k);
        let mut acc = ExactInt::ONE;
        for i in 0..k {
            acc = &(&acc * &ExactInt::from(n - i)) / &ExactInt::from(i + 1);
        }
        acc
    }
}

macro_rules! impl_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactInt {
            fn from(v: $t) -> Self {
                ExactInt(Small(v as i128))
            }
        }
    )*};
}
impl_from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, usize, isize);

impl From<u128> for ExactInt {
    fn from(v: u128) -> Self {
        match i128::try_from(v) {
            Ok(s) => ExactInt(Small(s)),
            Err(_) => ExactInt(Big(BigInt::from(v))),
        }
    }
}

impl From<BigInt> for ExactInt {
    fn from(v: BigInt) -> Self {
        ExactInt::from_big(v)
    }
}

impl Default for ExactInt {
    fn default() -> Self {
        ExactInt::ZERO
    }
}

impl PartialEq for ExactInt {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Small(a), Small(b)) => a == b,
            (Big(a), Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactInt {}

impl Hash for ExactInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.signum().hash(state);
        self.magnitude_be_bytes().hash(state);
    }
}

impl PartialOrd for ExactInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Small(a), Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Small(v) => fmt::Display::fmt(v, f),
            Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i128>() {
            return Ok(ExactInt(Small(v)));
        }
        t.parse::<BigInt>()
            .map(ExactInt::from_big)
            .map_err(|_| Error::Parse(alloc::format!("not an integer: {s:?}")))
    }
}

impl ExactInt {
    /// Decimal string, the serialization used for every exact count.
    pub fn to_decimal(&self) -> String {
        self.to_string()
    }
}

fn add_ref(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let Some(v) = x.checked_add(*y) {
            return ExactInt(Small(v));
        }
    }
    ExactInt::from_big(a.to_big() + b.to_big())
}

fn sub_ref(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let Some(v) = x.checked_sub(*y) {
            return ExactInt(Small(v));
        }
    }
    ExactInt::from_big(a.to_big() - b.to_big())
}

fn mul_ref(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        if let Some(v) = x.checked_mul(*y) {
            return ExactInt(Small(v));
        }
    }
    ExactInt::from_big(a.to_big() * b.to_big())
}

/// Truncating division, matching Rust's integer `/`.
fn div_ref(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        assert!(*y != 0, "division by zero");
        if let Some(v) = x.checked_div(*y) {
            return ExactInt(Small(v));
        }
    }
    ExactInt::from_big(a.to_big() / b.to_big())
}

fn rem_ref(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Small(x), Small(y)) = (&a.0, &b.0) {
        assert!(*y != 0, "division by zero");
        if let Some(v) = x.checked_rem(*y) {
            return ExactInt(Small(v));
        }
    }
    ExactInt::from_big(a.to_big() % b.to_big())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl<'a> $trait<&'a ExactInt> for &'a ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: &'a ExactInt) -> ExactInt {
                $f(self, rhs)
            }
        }
        impl $trait<ExactInt> for ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: ExactInt) -> ExactInt {
                $f(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a ExactInt> for ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: &'a ExactInt) -> ExactInt {
                $f(&self, rhs)
            }
        }
        impl<'a> $trait<ExactInt> for &'a ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: ExactInt) -> ExactInt {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);
forward_binop!(Rem, rem, rem_ref);

impl AddAssign<&ExactInt> for ExactInt {
    fn add_assign(&mut self, rhs: &ExactInt) {
        if let (Small(x), Small(y)) = (&mut self.0, &rhs.0) {
            if let Some(v) = x.checked_add(*y) {
                *x = v;
                return;
            }
        }
        *self = add_ref(self, rhs);
    }
}

impl AddAssign<ExactInt> for ExactInt {
    fn add_assign(&mut self, rhs: ExactInt) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactInt> for ExactInt {
    fn sub_assign(&mut self, rhs: &ExactInt) {
        *self = sub_ref(self, rhs);
    }
}

impl MulAssign<&ExactInt> for ExactInt {
    fn mul_assign(&mut self, rhs: &ExactInt) {
        *self = mul_ref(self, rhs);
    }
}

impl Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        -&self
    }
}

impl Neg for &ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        match &self.0 {
            Small(v) => match v.checked_neg() {
                Some(n) => ExactInt(Small(n)),
                None => ExactInt::from_big(-BigInt::from(*v)),
            },
            Big(b) => ExactInt::from_big(-b.clone()),
        }
    }
}

impl Sum for ExactInt {
    fn sum<I: Iterator<Item = ExactInt>>(iter: I) -> Self {
        iter.fold(ExactInt::ZERO, |mut acc, v| {
            acc += &v;
            acc
        })
    }
}

impl<'a> Sum<&'a ExactInt> for ExactInt {
    fn sum<I: Iterator<Item = &'a ExactInt>>(iter: I) -> Self {
        iter.fold(ExactInt::ZERO, |mut acc, v| {
            acc += v;
            acc
        })
    }
}

impl Product for ExactInt {
    fn product<I: Iterator<Item = ExactInt>>(iter: I) -> Self {
        iter.fold(ExactInt::ONE, |acc, v| acc * v)
    }
}

impl Zero for ExactInt {
    fn zero() -> Self {
        ExactInt::ZERO
    }
    fn is_zero(&self) -> bool {
        ExactInt::is_zero(self)
    }
}

impl One for ExactInt {
    fn one() -> Self {
        ExactInt::ONE
    }
}
