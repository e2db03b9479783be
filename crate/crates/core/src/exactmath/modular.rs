use num_bigint::BigInt;

use super::ExactInt;
use crate::{Error, Result};

/// `base^exponent mod modulus`, in `[0, modulus)`.
pub fn mod_pow(base: &ExactInt, exponent: u64, modulus: &ExactInt) -> Result<ExactInt> {
    if !modulus.is_positive() {
        return Err(Error::InvalidParameter(alloc::format!("modulus must be >= 1, got {modulus}")));
    }
    if let Some(m) = modulus.to_u64() {
        let b = base.mod_floor(modulus).to_u64().expect("reduced below a u64 modulus");
        return Ok(ExactInt::from(mod_pow_u64(b, exponent, m)));
    }
    let m = modulus.to_big();
    let b = base.mod_floor(modulus).to_big();
    Ok(ExactInt::from_big(b.modpow(&BigInt::from(exponent), &m)))
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Trial-division primality test; the primes in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
