use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::{Error, ExactInt, Result};

/// Degree `k`, variable-pair count `s` and range bound `X` of the system
/// `x_1^j + ... + x_s^j = y_1^j + ... + y_s^j` for `1 <= j <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemParams {
    pub k: u32,
    pub s: u32,
    pub x: u64,
}

impl SystemParams {
    pub fn new(k: u32, s: u32, x: u64) -> Result<Self> {
        if k == 0 || s == 0 || x == 0 {
            return Err(Error::InvalidParameter(format!("k, s and X must all be >= 1 (got k={k}, s={s}, X={x})")));
        }
        Ok(SystemParams { k, s, x })
    }

    pub fn with_x(self, x: u64) -> Result<Self> {
        Self::new(self.k, self.s, x)
    }

    pub fn with_s(self, s: u32) -> Result<Self> {
        Self::new(self.k, s, self.x)
    }
}

/// The power sums `(Σx, Σx², …, Σx^k)` of a tuple, possibly signed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerSumVector(pub Vec<ExactInt>);

impl PowerSumVector {
    pub fn zero(k: u32) -> Self {
        PowerSumVector(alloc::vec![ExactInt::ZERO; k as usize])
    }

    pub fn of_tuple(k: u32, tuple: &[u64]) -> Self {
        let mut v = Self::zero(k);
        for &x in tuple {
            v.add_signed(x, 1);
        }
        v
    }

    pub fn add_signed(&mut self, x: u64, sign: i8) {
        let x = ExactInt::from(x);
        let mut p = x.clone();
        for c in self.0.iter_mut() {
            if sign >= 0 {
                *c += &p;
            } else {
                *c -= &p;
            }
            p *= &x;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        PowerSumVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Canonical byte key: component count, then per component a sign byte,
    /// a 4-byte big-endian length and the big-endian magnitude.
    pub fn encode(&self) -> PowerSumKey {
        let mut out = Vec::with_capacity(4 + self.0.len() * 8);
        out.extend_from_slice(&(self.0.len() as u32).to_be_bytes());
        for c in &self.0 {
            let mag = c.magnitude_be_bytes();
            out.push(u8::from(c.is_negative()));
            out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            out.extend_from_slice(&mag);
        }
        PowerSumKey(out)
    }
}

/// Platform-independent encoding of a [`PowerSumVector`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerSumKey(pub Vec<u8>);

impl PowerSumKey {
    pub fn decode(&self) -> Result<PowerSumVector> {
        let bad = || Error::Parse(format!("malformed power-sum key of {} bytes", self.0.len()));
        let b = &self.0;
        let read_u32 = |at: usize| -> Option<usize> {
            b.get(at..at + 4).map(|w| u32::from_be_bytes([w[0], w[1], w[2], w[3]]) as usize)
        };
        let n = read_u32(0).ok_or_else(bad)?;
        let mut at = 4;
        let mut comps = Vec::with_capacity(n);
        for _ in 0..n {
            let neg = match b.get(at) {
                Some(0) => false,
                Some(1) => true,
                _ => return Err(bad()),
            };
            let len = read_u32(at + 1).ok_or_else(bad)?;
            let mag = b.get(at + 5..at + 5 + len).ok_or_else(bad)?;
            comps.push(ExactInt::from_sign_magnitude(neg, mag));
            at += 5 + len;
        }
        if at != b.len() {
            return Err(bad());
        }
        Ok(PowerSumVector(comps))
    }
}

/// Exact multiplicity table from power-sum vectors to counts.
///
/// `total` tracks the weight of everything inserted, so that
/// `total == Σ counts` can be asserted after merges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountMap {
    entries: BTreeMap<PowerSumKey, ExactInt>,
    total: ExactInt,
}

impl CountMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: PowerSumKey, weight: &ExactInt) {
        if weight.is_zero() {
            return;
        }
        self.total += weight;
        match self.entries.get_mut(&key) {
            Some(c) => *c += weight,
            None => {
                self.entries.insert(key, weight.clone());
            }
        }
    }

    pub fn insert_vector(&mut self, v: &PowerSumVector, weight: &ExactInt) {
        self.insert(v.encode(), weight);
    }

    /// Associative, commutative merge by count addition.
    pub fn merge(&mut self, other: CountMap) {
        if self.entries.is_empty() {
            *self = other;
            return;
        }
        for (k, c) in other.entries {
            self.insert(k, &c);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> &ExactInt {
        &self.total
    }

    pub fn get(&self, key: &PowerSumKey) -> Option<&ExactInt> {
        self.entries.get(key)
    }

    /// Entries in canonical (sorted key) order.
    pub fn iter(&self) -> impl Iterator<Item = (&PowerSumKey, &ExactInt)> {
        self.entries.iter()
    }

    /// `Σ_v N(v)²`.
    pub fn sum_of_squares(&self) -> ExactInt {
        self.entries.values().map(|c| c * c).sum()
    }

    /// `Σ_v N(v) M(v)`.
    pub fn inner_product(&self, other: &CountMap) -> ExactInt {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .entries
            .iter()
            .filter_map(|(k, c)| large.entries.get(k).map(|d| c * d))
            .sum()
    }

    /// Recomputes the total from the entries and compares with the tracked one.
    pub fn is_consistent(&self) -> bool {
        let sum: ExactInt = self.entries.values().sum();
        sum == self.total && self.entries.values().all(ExactInt::is_positive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn params_reject_zero() {
        assert!(SystemParams::new(0, 1, 1).is_err());
        assert!(SystemParams::new(1, 0, 1).is_err());
        assert!(SystemParams::new(1, 1, 0).is_err());
        assert!(SystemParams::new(3, 2, 10).is_ok());
    }

    #[test]
    fn power_sums_of_tuple() {
        let v = PowerSumVector::of_tuple(3, &[1, 2, 3]);
        assert_eq!(v.0, [6, 14, 36].map(ExactInt::from));
    }

    #[test]
    fn merge_tracks_total() {
        let mut a = CountMap::new();
        a.insert_vector(&PowerSumVector::of_tuple(2, &[1]), &ExactInt::from(2));
        let mut b = CountMap::new();
        b.insert_vector(&PowerSumVector::of_tuple(2, &[1]), &ExactInt::from(3));
        b.insert_vector(&PowerSumVector::of_tuple(2, &[2]), &ExactInt::ONE);
        a.merge(b);
        assert_eq!(a.len(), 2);
        assert_eq!(a.total(), &ExactInt::from(6));
        assert!(a.is_consistent());
        assert_eq!(a.sum_of_squares(), ExactInt::from(26));
    }

    proptest! {
        #[test]
        fn key_round_trip(comps in proptest::collection::vec(any::<i128>(), 0..6), scale in 0u32..3) {
            let big = ExactInt::from(i128::MAX).pow(scale);
            let v = PowerSumVector(comps.iter().map(|c| &ExactInt::from(*c) * &big).collect());
            prop_assert_eq!(v.encode().decode().unwrap(), v);
        }

        #[test]
        fn encoding_is_injective(a in proptest::collection::vec(-1000i64..1000, 3), b in proptest::collection::vec(-1000i64..1000, 3)) {
            let va = PowerSumVector(a.iter().map(|c| ExactInt::from(*c)).collect());
            let vb = PowerSumVector(b.iter().map(|c| ExactInt::from(*c)).collect());
            prop_assert_eq!(va.encode() == vb.encode(), va == vb);
        }
    }
}
