use alloc::vec;
use alloc::vec::Vec;

use super::SystemParams;
use crate::{ExactInt, ExactRational};

fn mul_truncated(a: &[ExactRational], b: &[ExactRational], deg: usize) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Number of solution pairs whose multisets agree:
/// `D_s(X) = Σ_m (s!/Π mult!)²` over size-s multisets `m` from `[1,X]`.
///
/// Computed as `(s!)² [t^s] (Σ_j t^j/(j!)²)^X` by binary powering, so the
/// cost is polynomial in `s` and logarithmic in `X`. The degree `k` plays
/// no role.
pub fn diagonal_oracle(params: &SystemParams) -> ExactInt {
    let s = params.s as usize;
    let base: Vec<ExactRational> = (0..=s)
        .map(|j| {
            let f = ExactInt::factorial(j as u32);
            ExactRational::new(ExactInt::ONE, &f * &f).expect("factorial is nonzero")
        })
        .collect();
    let mut acc = vec![ExactRational::zero(); s + 1];
    acc[0] = ExactRational::one();
    let mut pow = base;
    let mut e = params.x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_truncated(&acc, &pow, s);
        }
        e >>= 1;
        if e > 0 {
            pow = mul_truncated(&pow, &pow, s);
        }
    }
    let sf = ExactInt::factorial(params.s);
    let v = &acc[s] * &ExactRational::from_int(&sf * &sf);
    assert!(v.is_integer(), "diagonal count must be integral");
    v.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn d(s: u32, x: u64) -> ExactInt {
        diagonal_oracle(&SystemParams::new(3, s, x).unwrap())
    }

    /// Oracle: sort every tuple, count tuples per multiset, square and sum.
    fn brute(s: u32, x: u64) -> u64 {
        let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for mut i in 0..(x as usize).pow(s) {
            let mut t: Vec<u64> = (0..s)
                .map(|_| {
                    let v = (i % x as usize) as u64;
                    i /= x as usize;
                    v
                })
                .collect();
            t.sort_unstable();
            *counts.entry(t).or_default() += 1;
        }
        counts.values().map(|c| c * c).sum()
    }

    #[test]
    fn examples() {
        assert_eq!(d(2, 2), ExactInt::from(6));
        assert_eq!(d(1, 17), ExactInt::from(17));
        assert_eq!(d(3, 2), ExactInt::from(20));
    }

    #[test]
    fn matches_multiset_enumeration() {
        for s in 1..=4 {
            for x in 1..=6 {
                assert_eq!(d(s, x), ExactInt::from(brute(s, x)), "s={s} X={x}");
            }
        }
    }

    #[test]
    fn large_x_is_cheap() {
        // s = 2: X² + 2·X(X−1)... ordered pairs: X (equal) + 4·C(X,2)
        let x = 1_000_000_000u64;
        let want = ExactInt::from(x) + ExactInt::from(2u64) * ExactInt::from(x) * ExactInt::from(x - 1);
        assert_eq!(d(2, x), want);
    }
}
