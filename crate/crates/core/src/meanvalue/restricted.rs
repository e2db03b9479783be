use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{CountMap, PowerSumVector, SystemParams};
use crate::{Budget, Error, ExactInt, Result};

fn checked_pow(p: u64, c: u32) -> Result<u64> {
    p.checked_pow(c).ok_or_else(|| Error::InvalidConstraint(format!("{p}^{c} overflows")))
}

/// `x ≡ ξ (mod p^c)`, with `ξ` in `[1, p^c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueConstraint {
    pub p: u64,
    pub c: u32,
    pub xi: u64,
}

impl ResidueConstraint {
    pub fn new(p: u64, c: u32, xi: u64) -> Result<Self> {
        let r = ResidueConstraint { p, c, xi };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::InvalidConstraint(format!("modulus base must be >= 2, got {}", self.p)));
        }
        let m = checked_pow(self.p, self.c)?;
        if self.xi == 0 || self.xi > m {
            return Err(Error::InvalidConstraint(format!("class {} not in [1, {m}]", self.xi)));
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.c)
    }

    /// The members of `[1, X]` in this class; empty when none is.
    pub fn values(&self, x: u64) -> Vec<u64> {
        let m = self.modulus();
        let first = (self.xi - 1) % m + 1;
        (first..=x).step_by(m as usize).collect()
    }
}

/// One conditioned factor: an r-tuple with `x_i ≡ ξ (mod p^c)`, pairwise
/// distinct mod `p^{c+1}`, contributing `Σ σ_i x_i^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionedBlock {
    pub p: u64,
    pub c: u32,
    pub xi: u64,
    pub sigma: Vec<i8>,
}

impl ConditionedBlock {
    pub fn new(p: u64, c: u32, xi: u64, sigma: Vec<i8>) -> Result<Self> {
        ResidueConstraint::new(p, c, xi)?;
        checked_pow(p, c + 1)?;
        if sigma.is_empty() || sigma.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidConstraint(format!("sign pattern must be a nonempty ±1 list, got {sigma:?}")));
        }
        Ok(ConditionedBlock { p, c, xi, sigma })
    }

    pub fn arity(&self) -> usize {
        self.sigma.len()
    }

    /// All admissible ordered r-tuples from `[1, X]`.
    pub fn tuples(&self, x: u64) -> Vec<Vec<u64>> {
        let base = ResidueConstraint { p: self.p, c: self.c, xi: self.xi }.values(x);
        let fine = self.p.pow(self.c + 1);
        let mut out = Vec::new();
        let mut cur: Vec<u64> = Vec::with_capacity(self.arity());
        fn rec(base: &[u64], fine: u64, r: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for &v in base {
                if cur.iter().all(|w| w % fine != v % fine) {
                    cur.push(v);
                    rec(base, fine, r, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&base, fine, self.arity(), &mut cur, &mut out);
        out
    }
}

/// A mixed mean value: `plain` unrestricted-or-constrained variables per
/// side plus conditioned blocks, all in `[1, X]`, degree `k`.
///
/// `constraints` is empty (no constraints), has `plain` entries (the same
/// constraint on `x_i` and `y_i`) or `2·plain` entries (`x_1..x_s` then
/// `y_1..y_s`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedSystem {
    pub k: u32,
    pub x: u64,
    pub plain: usize,
    pub constraints: Vec<Option<ResidueConstraint>>,
    pub blocks: Vec<ConditionedBlock>,
}

/// One side of the system as a list of factors, each a list of
/// (signed power-sum contribution) alternatives.
type Side = Vec<Vec<PowerSumVector>>;

impl RestrictedSystem {
    fn side_constraints(&self, right: bool) -> Result<Vec<Option<ResidueConstraint>>> {
        let n = self.constraints.len();
        let s = self.plain;
        let out = if n == 0 {
            vec![None; s]
        } else if n == s {
            self.constraints.clone()
        } else if n == 2 * s {
            let (l, r) = self.constraints.split_at(s);
            if right { r.to_vec() } else { l.to_vec() }
        } else {
            return Err(Error::DimensionMismatch { expected: 2 * s, found: n });
        };
        for c in out.iter().flatten() {
            c.validate()?;
        }
        Ok(out)
    }

    fn side(&self, right: bool) -> Result<Side> {
        let mut factors: Side = Vec::new();
        for c in self.side_constraints(right)? {
            let values: Vec<u64> = match c {
                Some(c) => c.values(self.x),
                None => (1..=self.x).collect(),
            };
            factors.push(values.iter().map(|v| PowerSumVector::of_tuple(self.k, &[*v])).collect());
        }
        for b in &self.blocks {
            factors.push(
                b.tuples(self.x)
                    .iter()
                    .map(|t| {
                        let mut v = PowerSumVector::zero(self.k);
                        for (x, s) in t.iter().zip(&b.sigma) {
                            v.add_signed(*x, *s);
                        }
                        v
                    })
                    .collect(),
            );
        }
        Ok(factors)
    }

    /// Upper bound on the convolution work for one side.
    fn side_cost(side: &Side) -> u128 {
        let mut prefix: u128 = 1;
        let mut cost: u128 = 0;
        for f in side {
            prefix = prefix.saturating_mul(f.len() as u128);
            cost = cost.saturating_add(prefix);
        }
        cost
    }

    pub fn estimated_cost(&self) -> Result<u128> {
        Ok(Self::side_cost(&self.side(false)?).saturating_add(Self::side_cost(&self.side(true)?)))
    }

    fn side_map(&self, side: &Side) -> CountMap {
        let mut acc: alloc::collections::BTreeMap<PowerSumVector, ExactInt> = alloc::collections::BTreeMap::new();
        acc.insert(PowerSumVector::zero(self.k), ExactInt::ONE);
        for f in side {
            let mut next = alloc::collections::BTreeMap::new();
            for (v, c) in &acc {
                for w in f {
                    let e = next.entry(v.add(w)).or_insert(ExactInt::ZERO);
                    *e += c;
                }
            }
            acc = next;
        }
        let mut map = CountMap::new();
        for (v, c) in acc {
            map.insert_vector(&v, &c);
        }
        map
    }

    /// Exact number of solutions; 0 when some constraint class misses `[1, X]`.
    pub fn count(&self, budget: Budget) -> Result<ExactInt> {
        let (l, r) = (self.side(false)?, self.side(true)?);
        budget.check(Self::side_cost(&l).saturating_add(Self::side_cost(&r)))?;
        let lm = self.side_map(&l);
        if l == r {
            return Ok(lm.sum_of_squares());
        }
        Ok(lm.inner_product(&self.side_map(&r)))
    }
}

/// `J_{s,k}(X)` with per-variable residue constraints and conditioned blocks.
pub fn count_j_restricted(
    params: &SystemParams,
    constraints: &[Option<ResidueConstraint>],
    blocks: &[ConditionedBlock],
    budget: Budget,
) -> Result<ExactInt> {
    RestrictedSystem {
        k: params.k,
        x: params.x,
        plain: params.s as usize,
        constraints: constraints.to_vec(),
        blocks: blocks.to_vec(),
    }
    .count(budget)
}

/// Parameters of the conditioned mean values `I_{a,b}` and `K_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionedFamily {
    pub k: u32,
    pub x: u64,
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub r: usize,
}

/// A maximum over base classes and sign patterns with its maximizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionedMax {
    pub value: ExactInt,
    pub xi: u64,
    pub eta: u64,
    pub sigma: Vec<i8>,
    pub tau: Option<Vec<i8>>,
    pub evaluated: usize,
}

pub fn sign_patterns(r: usize) -> Vec<Vec<i8>> {
    (0..1u32 << r).map(|mask| (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

impl ConditionedFamily {
    fn validate(&self) -> Result<()> {
        if self.a == 0 || self.b == 0 {
            return Err(Error::InvalidParameter(format!("levels a, b must be >= 1 (got a={}, b={})", self.a, self.b)));
        }
        if self.r == 0 || self.k == 0 || self.x == 0 {
            return Err(Error::InvalidParameter("k, r and X must be >= 1".into()));
        }
        if !crate::exactmath::is_prime(self.p) {
            return Err(Error::InvalidParameter(format!("{} is not prime", self.p)));
        }
        checked_pow(self.p, self.a.max(self.b) + 1)?;
        Ok(())
    }

    fn base_classes(&self) -> Vec<(u64, u64)> {
        let (pa, pb) = (self.p.pow(self.a), self.p.pow(self.b));
        let mut out = Vec::new();
        for xi in 1..=pa {
            for eta in 1..=pb {
                if eta % self.p != xi % self.p {
                    out.push((xi, eta));
                }
            }
        }
        out
    }

    /// `I^σ_{a,b}(X; ξ, η)`: `s` plain variables `≡ η (mod p^b)` with the
    /// block `F_a^σ(ξ)` on each side.
    pub fn i_system(&self, s: usize, xi: u64, eta: u64, sigma: &[i8]) -> Result<RestrictedSystem> {
        let c = ResidueConstraint::new(self.p, self.b, eta)?;
        Ok(RestrictedSystem {
            k: self.k,
            x: self.x,
            plain: s,
            constraints: vec![Some(c); s],
            blocks: vec![ConditionedBlock::new(self.p, self.a, xi, sigma.to_vec())?],
        })
    }

    /// `K^{σ,τ}_{a,b}(X; ξ, η)`: the block `F_a^σ(ξ)` and `u` copies of
    /// `F_b^τ(η)` on each side.
    pub fn k_system(&self, u: usize, xi: u64, eta: u64, sigma: &[i8], tau: &[i8]) -> Result<RestrictedSystem> {
        let mut blocks = vec![ConditionedBlock::new(self.p, self.a, xi, sigma.to_vec())?];
        let inner = ConditionedBlock::new(self.p, self.b, eta, tau.to_vec())?;
        blocks.extend(core::iter::repeat(inner).take(u));
        Ok(RestrictedSystem { k: self.k, x: self.x, plain: 0, constraints: Vec::new(), blocks })
    }

    /// `I_{a,b}(X)`: maximum of `I^σ_{a,b}` over `ξ`, `η ≢ ξ (mod p)` and `σ`.
    pub fn max_i(&self, s: usize, budget: Budget) -> Result<ConditionedMax> {
        self.validate()?;
        let mut jobs = Vec::new();
        for (xi, eta) in self.base_classes() {
            for sigma in sign_patterns(self.r) {
                jobs.push((self.i_system(s, xi, eta, &sigma)?, xi, eta, sigma, None));
            }
        }
        Self::maximize(jobs, budget)
    }

    /// `K_{a,b}(X)`: maximum of `K^{σ,τ}_{a,b}` over `ξ`, `η ≢ ξ (mod p)`, `σ` and `τ`.
    pub fn max_k(&self, u: usize, budget: Budget) -> Result<ConditionedMax> {
        self.validate()?;
        let mut jobs = Vec::new();
        for (xi, eta) in self.base_classes() {
            for sigma in sign_patterns(self.r) {
                for tau in sign_patterns(self.r) {
                    jobs.push((self.k_system(u, xi, eta, &sigma, &tau)?, xi, eta, sigma.clone(), Some(tau)));
                }
            }
        }
        Self::maximize(jobs, budget)
    }

    #[allow(clippy::type_complexity)]
    fn maximize(jobs: Vec<(RestrictedSystem, u64, u64, Vec<i8>, Option<Vec<i8>>)>, budget: Budget) -> Result<ConditionedMax> {
        let mut total: u128 = 0;
        for j in &jobs {
            total = total.saturating_add(j.0.estimated_cost()?);
        }
        budget.check(total)?;
        let mut best: Option<ConditionedMax> = None;
        let evaluated = jobs.len();
        for (sys, xi, eta, sigma, tau) in jobs {
            let value = sys.count(Budget(u128::MAX))?;
            if best.as_ref().map_or(true, |b| value > b.value) {
                best = Some(ConditionedMax { value, xi, eta, sigma, tau, evaluated });
            }
        }
        best.ok_or_else(|| Error::InvalidParameter("no admissible (ξ, η) pair".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanvalue::{count_j, Strategy};

    fn params(k: u32, s: u32, x: u64) -> SystemParams {
        SystemParams::new(k, s, x).unwrap()
    }

    #[test]
    fn unconstrained_reduces_to_count_j() {
        for (k, s, x) in [(2, 2, 5), (3, 2, 4), (1, 3, 4)] {
            let p = params(k, s, x);
            let a = count_j_restricted(&p, &[], &[], Budget::DEFAULT).unwrap();
            assert_eq!(a, count_j(&p, Strategy::Direct, Budget::DEFAULT).unwrap());
        }
    }

    #[test]
    fn class_outside_range_gives_zero() {
        let c = ResidueConstraint::new(5, 2, 13).unwrap();
        assert!(c.values(10).is_empty());
        let got = count_j_restricted(&params(2, 1, 10), &[Some(c)], &[], Budget::DEFAULT).unwrap();
        assert_eq!(got, ExactInt::ZERO);
        // class 1 mod 25 meets [1, 10] only at 1
        let c = ResidueConstraint::new(5, 2, 1).unwrap();
        assert_eq!(c.values(10), [1]);
        assert_eq!(count_j_restricted(&params(2, 2, 10), &[Some(c); 2], &[], Budget::DEFAULT).unwrap(), ExactInt::ONE);
    }

    #[test]
    fn odd_variables_match_brute_force() {
        // oracle: all quadruples over {1, 3}
        let vals = [1u64, 3];
        let mut n = 0;
        for &x1 in &vals {
            for &x2 in &vals {
                for &y1 in &vals {
                    for &y2 in &vals {
                        if x1 + x2 == y1 + y2 && x1 * x1 + x2 * x2 == y1 * y1 + y2 * y2 {
                            n += 1;
                        }
                    }
                }
            }
        }
        let c = ResidueConstraint::new(2, 1, 1).unwrap();
        let got = count_j_restricted(&params(2, 2, 4), &[Some(c); 4], &[], Budget::DEFAULT).unwrap();
        assert_eq!(got, ExactInt::from(n));
        assert_eq!(n, 6);
    }

    #[test]
    fn invalid_constraints() {
        assert!(ResidueConstraint::new(1, 1, 1).is_err());
        assert!(ResidueConstraint::new(5, 1, 6).is_err());
        assert!(ResidueConstraint::new(5, 1, 0).is_err());
        assert!(ConditionedBlock::new(5, 1, 1, vec![2]).is_err());
        let c = ResidueConstraint::new(3, 1, 1).unwrap();
        let err = count_j_restricted(&params(2, 2, 4), &[Some(c); 3], &[], Budget::DEFAULT).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn block_tuples_are_distinct_mod_finer_level() {
        let b = ConditionedBlock::new(3, 1, 2, vec![1, -1]).unwrap();
        let ts = b.tuples(20);
        assert!(!ts.is_empty());
        for t in &ts {
            assert!(t.iter().all(|v| v % 3 == 2));
            assert_ne!(t[0] % 9, t[1] % 9);
        }
        // values ≡ 2 mod 3 in [1,20]: 2,5,8,11,14,17,20 with classes mod 9: 2,5,8,2,5,8,2
        // ordered pairs from distinct classes: 2·(3·2 + 3·2 + 2·... ) computed directly
        let vals: Vec<u64> = (1..=20).filter(|v| v % 3 == 2).collect();
        let want = vals.iter().flat_map(|a| vals.iter().map(move |b| (a, b))).filter(|(a, b)| *a % 9 != *b % 9).count();
        assert_eq!(ts.len(), want);
    }

    /// Oracle for a signed block alone: count pairs of tuples with equal signed power sums.
    #[test]
    fn signed_block_matches_pair_count() {
        let fam = ConditionedFamily { k: 2, x: 12, p: 3, a: 1, b: 2, r: 2 };
        let sys = fam.k_system(0, 1, 2, &[1, -1], &[1, 1]).unwrap();
        let ts = sys.blocks[0].tuples(12);
        let sums: Vec<(i64, i64)> = ts
            .iter()
            .map(|t| {
                let (a, b) = (t[0] as i64, t[1] as i64);
                (a - b, a * a - b * b)
            })
            .collect();
        let want = sums.iter().flat_map(|u| sums.iter().map(move |v| u == v)).filter(|e| *e).count();
        assert_eq!(sys.count(Budget::DEFAULT).unwrap(), ExactInt::from(want));
    }

    #[test]
    fn maxima_cover_all_choices() {
        let fam = ConditionedFamily { k: 2, x: 12, p: 3, a: 1, b: 2, r: 2 };
        let m = fam.max_i(1, Budget::DEFAULT).unwrap();
        // ξ ∈ [1,3], η ∈ [1,9] with η ≢ ξ mod 3: 3·6 pairs, 4 sign patterns
        assert_eq!(m.evaluated, 18 * 4);
        let mut brute = ExactInt::ZERO;
        for xi in 1..=3u64 {
            for eta in 1..=9u64 {
                if eta % 3 == xi % 3 {
                    continue;
                }
                for sigma in sign_patterns(2) {
                    let v = fam.i_system(1, xi, eta, &sigma).unwrap().count(Budget::DEFAULT).unwrap();
                    brute = brute.max(v);
                }
            }
        }
        assert_eq!(m.value, brute);
        let mk = fam.max_k(1, Budget::DEFAULT).unwrap();
        assert_eq!(mk.evaluated, 18 * 16);
        assert!(mk.tau.is_some());
        assert!(fam.max_i(1, Budget(10)).unwrap_err().is_budget());
    }
}
