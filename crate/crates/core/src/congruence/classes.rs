use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::is_prime;
use crate::meanvalue::sign_patterns;
use crate::{Budget, Error, ExactInt, Result};

/// Which equivalence the solution tuples are counted under: `R(kb)` or `R(ρb)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftMode {
    /// `h = k`.
    Full,
    /// `h = ρ = k − r + 1`.
    Reduced,
}

/// How the maximum over `ξ`, `η` and `σ` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Every admissible `ξ`, `η` and `σ`.
    Exhaustive,
    /// `ξ = 1`, `η = p^b` and one sign pattern per multiset of signs up to
    /// global negation. Translation `z → z + t` and unit dilation
    /// `z − η → u(z − η)` permute solution sets and targets, so the maximum
    /// is unchanged.
    Symmetry,
}

/// The parameters of `B_{a,b}^{r,h}(p)` without the base classes, signs and target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BFamily {
    pub p: u64,
    pub k: u32,
    pub r: usize,
    pub a: u32,
    pub b: u32,
    pub mode: LiftMode,
}

/// One congruence system: `Σ σ_i (z_i − η)^j ≡ m_j (mod p^{jb})` for `1 <= j <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceInstance {
    pub family: BFamily,
    pub sigma: Vec<i8>,
    /// Ignored when `a = 0`.
    pub xi: u64,
    pub eta: u64,
    pub m: Vec<u64>,
}

/// Number of equivalence classes of solutions, with up to
/// [`WITNESS_CAP`] class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub cardinality: ExactInt,
    pub witnesses: Vec<Vec<u64>>,
}

pub const WITNESS_CAP: usize = 16;

/// `B_{a,b}^{r,h}(p)` with its maximizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxB {
    pub value: ExactInt,
    pub xi: u64,
    pub eta: u64,
    pub sigma: Vec<i8>,
    pub m: Vec<u64>,
    pub witnesses: Vec<Vec<u64>>,
    /// `(ξ, η, σ)` combinations evaluated.
    pub evaluated: usize,
}

impl BFamily {
    pub fn h(&self) -> u32 {
        match self.mode {
            LiftMode::Full => self.k,
            LiftMode::Reduced => self.k - self.r as u32 + 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: alloc::string::String| Err(Error::InvalidInstance(m));
        if !is_prime(self.p) {
            return bad(format!("{} is not prime", self.p));
        }
        if self.k < 2 {
            return bad(format!("k must be >= 2, got {}", self.k));
        }
        if self.r == 0 || self.r as u32 >= self.k {
            return bad(format!("r must lie in [1, k-1], got r={} for k={}", self.r, self.k));
        }
        if self.b == 0 || self.a >= self.b {
            return bad(format!("need 0 <= a < b and b >= 1, got a={}, b={}", self.a, self.b));
        }
        // the target code packs all residues m_j mod p^{jb} into one u64
        let tri = self.b as u64 * (self.k as u64 * (self.k as u64 + 1) / 2);
        if (self.p as f64).log2() * tri as f64 > 63.0 {
            return bad(format!("p^(b k(k+1)/2) = {}^{tri} is too large to enumerate", self.p));
        }
        Ok(())
    }

    fn pk(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    /// Admissible residues per coordinate, and the number of admissible
    /// classes mod `p^{a+1}` they fall into.
    fn coordinate_classes(&self, xi: u64, eta: u64) -> (Vec<u64>, u64) {
        let hb = self.pk(self.h() * self.b);
        let v: Vec<u64> = if self.a == 0 {
            (0..hb).filter(|c| c % self.p != eta % self.p).collect()
        } else {
            let pa = self.pk(self.a);
            (0..hb).filter(|c| c % pa == xi % pa).collect()
        };
        let q = if self.a == 0 { self.p - 1 } else { self.p };
        (v, q)
    }

    /// Estimated z-tuples visited for one `(ξ, η, σ)`.
    pub fn instance_cost(&self) -> u128 {
        let hb = self.pk(self.h() * self.b) as u128;
        let per = if self.a == 0 { hb / self.p as u128 * (self.p as u128 - 1) } else { hb / self.pk(self.a) as u128 };
        let q = if self.a == 0 { self.p as u128 - 1 } else { self.p as u128 };
        let lifts = (self.pk((self.k - self.h()) * self.b) as u128).saturating_pow(self.r as u32);
        let mut tuples: u128 = 1;
        for i in 0..self.r as u128 {
            if i >= q {
                return 0;
            }
            tuples = tuples.saturating_mul(per - i * (per / q));
        }
        tuples.saturating_mul(lifts)
    }

    fn choices(&self, search: SearchMode) -> Vec<(u64, u64, Vec<i8>)> {
        let (pa, pb) = (self.pk(self.a), self.pk(self.b));
        match search {
            SearchMode::Exhaustive => {
                let mut out = Vec::new();
                let xis: Vec<u64> = if self.a == 0 { vec![0] } else { (1..=pa).collect() };
                for &xi in &xis {
                    for eta in 1..=pb {
                        if self.a >= 1 && eta % self.p == xi % self.p {
                            continue;
                        }
                        for sigma in sign_patterns(self.r) {
                            out.push((xi, eta, sigma));
                        }
                    }
                }
                out
            }
            SearchMode::Symmetry => {
                let xi = if self.a == 0 { 0 } else { 1 };
                (0..=self.r / 2)
                    .map(|neg| {
                        let sigma = (0..self.r).map(|i| if i < self.r - neg { 1 } else { -1 }).collect();
                        (xi, pb, sigma)
                    })
                    .collect()
            }
        }
    }

    pub fn family_cost(&self, search: SearchMode) -> u128 {
        self.instance_cost().saturating_mul(self.choices(search).len() as u128)
    }
}

/// Walks the admissible class tuples mod `p^{hb}` and, for each, the target
/// codes of all its lifts mod `p^{kb}`.
struct Walker<'a> {
    fam: &'a BFamily,
    sigma: &'a [i8],
    eta: u64,
    pkb: u64,
    phb: u64,
    lifts: u64,
    /// `p^{jb}` for `j = 1..=k`.
    mods: Vec<u64>,
    coords: Vec<u64>,
    fine: u64,
}

impl<'a> Walker<'a> {
    fn new(fam: &'a BFamily, sigma: &'a [i8], xi: u64, eta: u64) -> Self {
        let (coords, _) = fam.coordinate_classes(xi, eta);
        Walker {
            fam,
            sigma,
            eta,
            pkb: fam.pk(fam.k * fam.b),
            phb: fam.pk(fam.h() * fam.b),
            lifts: fam.pk((fam.k - fam.h()) * fam.b),
            mods: (1..=fam.k).map(|j| fam.pk(j * fam.b)).collect(),
            coords,
            fine: fam.pk(fam.a + 1),
        }
    }

    fn encode(&self, m: &[u64]) -> u64 {
        let mut code = 0u64;
        for (mj, md) in m.iter().zip(&self.mods).rev() {
            code = code * md + mj % md;
        }
        code
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        self.mods
            .iter()
            .map(|md| {
                let v = code % md;
                code /= md;
                // report targets in [1, p^{kb}]
                if v == 0 { *md } else { v }
            })
            .collect()
    }

    /// `(σ (z − η)^j mod p^{kb})_j` for one coordinate.
    fn contribution(&self, z: u64, sign: i8) -> Vec<u64> {
        let n = self.pkb as u128;
        let d = (z as u128 + n - (self.eta as u128 % n)) % n;
        let mut out = Vec::with_capacity(self.fam.k as usize);
        let mut p = 1u128;
        for _ in 0..self.fam.k {
            p = p * d % n;
            out.push(if sign >= 0 { p as u64 } else { ((n - p) % n) as u64 });
        }
        out
    }

    /// Calls `visit(class, codes)` for every admissible class tuple, where
    /// `codes` are the target codes of its lifts (with repetition).
    fn walk(&self, mut visit: impl FnMut(&[u64], &mut Vec<u64>)) {
        let r = self.fam.r;
        let k = self.fam.k as usize;
        let mut class = Vec::with_capacity(r);
        let mut codes = Vec::new();
        self.rec_class(&mut class, r, k, &mut codes, &mut visit);
    }

    fn rec_class(&self, class: &mut Vec<u64>, r: usize, k: usize, codes: &mut Vec<u64>, visit: &mut impl FnMut(&[u64], &mut Vec<u64>)) {
        if class.len() == r {
            codes.clear();
            let mut acc = vec![0u64; k];
            self.rec_lift(class, 0, &mut acc, codes);
            visit(class, codes);
            return;
        }
        for &c in &self.coords {
            if class.iter().all(|w| w % self.fine != c % self.fine) {
                class.push(c);
                self.rec_class(class, r, k, codes, visit);
                class.pop();
            }
        }
    }

    fn rec_lift(&self, class: &[u64], i: usize, acc: &mut Vec<u64>, codes: &mut Vec<u64>) {
        if i == class.len() {
            codes.push(self.encode(acc));
            return;
        }
        let saved = acc.clone();
        for t in 0..self.lifts {
            let z = class[i] + t * self.phb;
            let c = self.contribution(z, self.sigma[i]);
            for (a, (s, cj)) in acc.iter_mut().zip(saved.iter().zip(&c)) {
                *a = (s + cj) % self.pkb;
            }
            self.rec_lift(class, i + 1, acc, codes);
        }
        acc.copy_from_slice(&saved);
    }
}

/// Adds sorted run-length counts of `buf` into `acc` (both sorted by code).
fn flush(buf: &mut Vec<u64>, acc: &mut Vec<(u64, u32)>) {
    if buf.is_empty() {
        return;
    }
    buf.sort_unstable();
    let mut runs: Vec<(u64, u32)> = Vec::new();
    for &c in buf.iter() {
        match runs.last_mut() {
            Some((k, n)) if *k == c => *n += 1,
            _ => runs.push((c, 1)),
        }
    }
    buf.clear();
    let mut merged = Vec::with_capacity(acc.len() + runs.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < runs.len() {
        if j == runs.len() || (i < acc.len() && acc[i].0 < runs[j].0) {
            merged.push(acc[i]);
            i += 1;
        } else if i == acc.len() || runs[j].0 < acc[i].0 {
            merged.push(runs[j]);
            j += 1;
        } else {
            merged.push((acc[i].0, acc[i].1 + runs[j].1));
            i += 1;
            j += 1;
        }
    }
    *acc = merged;
}

const FLUSH_AT: usize = 1 << 22;

impl CongruenceInstance {
    pub fn validate(&self) -> Result<()> {
        let f = &self.family;
        f.validate()?;
        if self.sigma.len() != f.r || self.sigma.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidInstance(format!("sigma must be {} entries of ±1", f.r)));
        }
        let (pa, pb, pkb) = (f.pk(f.a), f.pk(f.b), f.pk(f.k * f.b));
        if f.a >= 1 {
            if self.xi == 0 || self.xi > pa {
                return Err(Error::InvalidInstance(format!("xi = {} not in [1, {pa}]", self.xi)));
            }
            if self.eta % f.p == self.xi % f.p {
                return Err(Error::InvalidInstance(format!("eta = {} is congruent to xi = {} mod {}", self.eta, self.xi, f.p)));
            }
        }
        if self.eta == 0 || self.eta > pb {
            return Err(Error::InvalidInstance(format!("eta = {} not in [1, {pb}]", self.eta)));
        }
        if self.m.len() != f.k as usize || self.m.iter().any(|m| *m == 0 || *m > pkb) {
            return Err(Error::InvalidInstance(format!("m must be {} entries in [1, {pkb}]", f.k)));
        }
        Ok(())
    }
}

/// Exact number of `R(hb)`-classes of solutions for one target `m`.
pub fn enumerate_b(instance: &CongruenceInstance, budget: Budget) -> Result<ClassCount> {
    instance.validate()?;
    let f = &instance.family;
    budget.check(f.instance_cost())?;
    let w = Walker::new(f, &instance.sigma, instance.xi, instance.eta);
    let target = w.encode(&instance.m);
    let mut n = 0u64;
    let mut witnesses = Vec::new();
    w.walk(|class, codes| {
        if codes.contains(&target) {
            n += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(class.to_vec());
            }
        }
    });
    Ok(ClassCount { cardinality: ExactInt::from(n), witnesses })
}

/// `max_m card(C(m; ξ, η))` for fixed `ξ`, `η`, `σ`, with a maximizing `m`.
fn max_over_m(f: &BFamily, xi: u64, eta: u64, sigma: &[i8]) -> (u64, Vec<u64>) {
    let w = Walker::new(f, sigma, xi, eta);
    let mut buf: Vec<u64> = Vec::new();
    let mut acc: Vec<(u64, u32)> = Vec::new();
    w.walk(|_, codes| {
        codes.sort_unstable();
        codes.dedup();
        buf.extend_from_slice(codes);
        if buf.len() >= FLUSH_AT {
            flush(&mut buf, &mut acc);
        }
    });
    flush(&mut buf, &mut acc);
    // first code with the largest count, for a deterministic witness
    let mut best: Option<(u64, u32)> = None;
    for &(c, n) in &acc {
        if best.map_or(true, |(_, bn)| n > bn) {
            best = Some((c, n));
        }
    }
    match best {
        Some((c, n)) => (n as u64, w.decode(c)),
        None => (0, w.decode(0)),
    }
}

/// `B_{a,b}^{r,h}(p)`: the largest class count over all admissible `ξ`,
/// `η`, `σ` and targets `m`.
pub fn max_b(family: &BFamily, search: SearchMode, budget: Budget) -> Result<MaxB> {
    family.validate()?;
    let choices = family.choices(search);
    budget.check(family.instance_cost().saturating_mul(choices.len() as u128))?;
    let evaluated = choices.len();
    let mut best: Option<MaxB> = None;
    for (xi, eta, sigma) in choices {
        let (n, m) = max_over_m(family, xi, eta, &sigma);
        if best.as_ref().map_or(true, |b| ExactInt::from(n) > b.value) {
            best = Some(MaxB { value: ExactInt::from(n), xi, eta, sigma, m, witnesses: Vec::new(), evaluated });
        }
    }
    let mut best = best.ok_or_else(|| Error::InvalidInstance("no admissible (xi, eta) pair".into()))?;
    if !best.value.is_zero() {
        let inst = CongruenceInstance { family: *family, sigma: best.sigma.clone(), xi: best.xi.max(1), eta: best.eta, m: best.m.clone() };
        let inst = if family.a == 0 { CongruenceInstance { xi: 0, ..inst } } else { inst };
        let cc = enumerate_b(&inst, Budget(u128::MAX))?;
        debug_assert_eq!(cc.cardinality, best.value);
        best.witnesses = cc.witnesses;
    }
    Ok(best)
}

/// Target vector `m_j = Σ σ_i (z_i − η)^j mod p^{jb}` of a tuple, in `[1, p^{jb}]`.
pub fn target_of(family: &BFamily, sigma: &[i8], eta: u64, z: &[u64]) -> Vec<u64> {
    let w = Walker::new(family, sigma, 1, eta);
    let mut acc = vec![0u64; family.k as usize];
    for (zi, s) in z.iter().zip(sigma) {
        for (a, c) in acc.iter_mut().zip(w.contribution(*zi % w.pkb, *s)) {
            *a = (*a + c) % w.pkb;
        }
    }
    w.decode(w.encode(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn fam(p: u64, k: u32, r: usize, a: u32, b: u32, mode: LiftMode) -> BFamily {
        BFamily { p, k, r, a, b, mode }
    }

    /// Oracle: scan every z in [1, p^{kb}]^r straight from the definition.
    fn brute_classes(inst: &CongruenceInstance) -> u64 {
        let f = &inst.family;
        let (pkb, phb, p) = (f.pk(f.k * f.b), f.pk(f.h() * f.b), f.p);
        let pa = f.pk(f.a);
        let fine = f.pk(f.a + 1);
        let mut classes = BTreeSet::new();
        let total = (pkb as usize).pow(f.r as u32);
        for mut idx in 0..total {
            let z: Vec<u64> = (0..f.r)
                .map(|_| {
                    let v = (idx % pkb as usize) as u64 + 1;
                    idx /= pkb as usize;
                    v
                })
                .collect();
            let ok = if f.a == 0 {
                z.iter().all(|v| v % p != inst.eta % p)
            } else {
                z.iter().all(|v| v % pa == inst.xi % pa)
            };
            let distinct = (0..f.r).all(|i| (0..i).all(|j| z[i] % fine != z[j] % fine));
            if !ok || !distinct {
                continue;
            }
            let solves = (1..=f.k).all(|j| {
                let md = f.pk(j * f.b) as i128;
                let s: i128 = z.iter().zip(&inst.sigma).map(|(v, s)| *s as i128 * (*v as i128 - inst.eta as i128).pow(j)).sum();
                (s - inst.m[j as usize - 1] as i128).rem_euclid(md) == 0
            });
            if solves {
                classes.insert(z.iter().map(|v| v % phb).collect::<Vec<_>>());
            }
        }
        classes.len() as u64
    }

    #[test]
    fn unsolvable_target_gives_zero() {
        // r = 1, a = 1: z − η is a unit, so m_1 ≡ 0 mod p has no solution
        let f = fam(5, 3, 1, 1, 2, LiftMode::Full);
        let inst = CongruenceInstance { family: f, sigma: vec![1], xi: 1, eta: 25, m: vec![25, 1, 1] };
        assert_eq!(enumerate_b(&inst, Budget::DEFAULT).unwrap().cardinality, ExactInt::ZERO);
    }

    #[test]
    fn planted_solution_is_found() {
        let f = fam(5, 3, 2, 0, 1, LiftMode::Reduced);
        let sigma = vec![1, -1];
        let z = [7u64, 13];
        let m = target_of(&f, &sigma, 5, &z);
        let inst = CongruenceInstance { family: f, sigma, xi: 0, eta: 5, m };
        let cc = enumerate_b(&inst, Budget::DEFAULT).unwrap();
        assert!(cc.cardinality >= ExactInt::ONE);
        assert!(cc.witnesses.contains(&vec![7, 13]));
    }

    #[test]
    fn matches_definition_scan() {
        let cases = [
            (fam(5, 3, 1, 1, 2, LiftMode::Full), vec![1i8], 2u64, 5u64),
            (fam(5, 3, 1, 1, 2, LiftMode::Reduced), vec![-1], 3, 21),
            (fam(3, 3, 2, 0, 1, LiftMode::Reduced), vec![1, -1], 0, 2),
            (fam(3, 3, 2, 0, 1, LiftMode::Full), vec![1, 1], 0, 3),
            (fam(3, 2, 1, 0, 1, LiftMode::Full), vec![1], 0, 1),
        ];
        for (f, sigma, xi, eta) in cases {
            let pkb = f.pk(f.k * f.b);
            // a handful of targets, including ones with solutions
            let mut targets = vec![vec![1; f.k as usize]];
            for z0 in [1u64, 2, 4, 7] {
                let z: Vec<u64> = (0..f.r as u64).map(|i| (z0 + i * 5) % pkb + 1).collect();
                targets.push(target_of(&f, &sigma, eta, &z));
            }
            for m in targets {
                let inst = CongruenceInstance { family: f, sigma: sigma.clone(), xi, eta, m };
                if inst.validate().is_err() {
                    continue;
                }
                let got = enumerate_b(&inst, Budget::DEFAULT).unwrap();
                assert_eq!(got.cardinality, ExactInt::from(brute_classes(&inst)), "{inst:?}");
            }
        }
    }

    #[test]
    fn symmetry_mode_agrees_with_exhaustive() {
        for f in [
            fam(5, 3, 1, 1, 2, LiftMode::Full),
            fam(5, 3, 1, 1, 2, LiftMode::Reduced),
            fam(5, 3, 2, 0, 1, LiftMode::Full),
            fam(5, 3, 2, 0, 1, LiftMode::Reduced),
            fam(3, 3, 2, 0, 1, LiftMode::Full),
            fam(5, 4, 1, 0, 1, LiftMode::Reduced),
            fam(3, 2, 1, 1, 2, LiftMode::Full),
        ] {
            let e = max_b(&f, SearchMode::Exhaustive, Budget::DEFAULT).unwrap();
            let s = max_b(&f, SearchMode::Symmetry, Budget::DEFAULT).unwrap();
            assert_eq!(e.value, s.value, "{f:?}");
            assert!(s.evaluated <= e.evaluated);
        }
    }

    #[test]
    fn max_witness_reproduces_value() {
        let f = fam(5, 3, 1, 1, 2, LiftMode::Full);
        let best = max_b(&f, SearchMode::Exhaustive, Budget::DEFAULT).unwrap();
        assert!(best.value <= ExactInt::from(6));
        let inst = CongruenceInstance { family: f, sigma: best.sigma.clone(), xi: best.xi, eta: best.eta, m: best.m.clone() };
        assert_eq!(enumerate_b(&inst, Budget::DEFAULT).unwrap().cardinality, best.value);
        assert_eq!(best.witnesses.len() as u64, best.value.to_u64().unwrap().min(WITNESS_CAP as u64));
    }

    #[test]
    fn invalid_instances() {
        let f = fam(5, 3, 1, 1, 2, LiftMode::Full);
        let bad_eta = CongruenceInstance { family: f, sigma: vec![1], xi: 1, eta: 6, m: vec![1, 1, 1] };
        assert!(matches!(enumerate_b(&bad_eta, Budget::DEFAULT), Err(Error::InvalidInstance(_))));
        assert!(fam(5, 3, 3, 0, 1, LiftMode::Full).validate().is_err());
        assert!(fam(5, 3, 1, 2, 2, LiftMode::Full).validate().is_err());
        assert!(fam(6, 3, 1, 0, 1, LiftMode::Full).validate().is_err());
        assert!(max_b(&fam(5, 3, 2, 0, 2, LiftMode::Full), SearchMode::Symmetry, Budget(1000)).unwrap_err().is_budget());
    }

    #[test]
    fn cost_counts_distinct_tuples() {
        // a = 0, b = 1, p = 5, k = 3, h = k: 100 residues mod 125 off η's class, 4 classes mod 5
        let f = fam(5, 3, 2, 0, 1, LiftMode::Full);
        assert_eq!(f.instance_cost(), 100 * 75);
        let f = fam(5, 3, 2, 0, 1, LiftMode::Reduced);
        assert_eq!(f.instance_cost(), 20 * 15 * 25);
    }
}
