use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::{is_prime, mod_inverse_u64};
use crate::{Budget, Error, ExactInt, Result};

/// Sparse integer polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    /// Sorted by exponent vector, no zero coefficients.
    terms: Vec<(Vec<u32>, ExactInt)>,
}

impl MultiPoly {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, ExactInt)>) -> Result<Self> {
        let mut merged: alloc::collections::BTreeMap<Vec<u32>, ExactInt> = alloc::collections::BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            *merged.entry(e).or_insert(ExactInt::ZERO) += &c;
        }
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, ExactInt)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * &ExactInt::from(e[var]))
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Value at `x` reduced into `[0, m)`.
    pub fn eval_mod(&self, x: &[u64], m: u64) -> u64 {
        let mm = ExactInt::from(m);
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let mut t = c.mod_floor(&mm).to_u64().expect("reduced below m") as u128;
            for (xi, ei) in x.iter().zip(e) {
                for _ in 0..*ei {
                    t = t * (*xi as u128 % m as u128) % m as u128;
                }
            }
            acc = (acc + t) % m as u128;
        }
        acc as u64
    }
}

/// Determinant of a square matrix over `Z/pZ`.
pub fn det_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] % p != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        let pv = a[col][col] % p;
        det = (det as u128 * pv as u128 % p as u128) as u64;
        let inv = mod_inverse_u64(pv, p).expect("p is prime");
        for r in col + 1..n {
            let f = (a[r][col] % p) as u128 * inv as u128 % p as u128;
            if f == 0 {
                continue;
            }
            let (top, bottom) = a.split_at_mut(r);
            for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                let sub = f * (y % p) as u128 % p as u128;
                *x = ((*x % p) as u128 + p as u128 - sub) as u64 % p;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselReport {
    pub count: ExactInt,
    /// Product of the total degrees.
    pub degree_bound: ExactInt,
    pub within_bound: bool,
}

/// Number of `x ∈ [1, ϖ^l]^d` with `f(x) ≡ 0 (mod ϖ^l)` and Jacobian
/// determinant prime to `ϖ`; at most the product of the degrees.
pub fn hensel_count(system: &[MultiPoly], prime: u64, level: u32, budget: Budget) -> Result<HenselReport> {
    let d = system.len();
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidParameter(format!("need 1 to 3 polynomials, got {d}")));
    }
    if let Some(f) = system.iter().find(|f| f.nvars() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: f.nvars() });
    }
    if !is_prime(prime) || level == 0 {
        return Err(Error::InvalidParameter(format!("need a prime modulus base and level >= 1, got {prime}^{level}")));
    }
    let m = prime
        .checked_pow(level)
        .filter(|m| *m < 1 << 40)
        .ok_or_else(|| Error::InvalidParameter(format!("{prime}^{level} is too large")))?;
    budget.check((m as u128).saturating_pow(d as u32))?;
    let jac: Vec<Vec<MultiPoly>> = system.iter().map(|f| (0..d).map(|i| f.partial(i)).collect()).collect();
    let mut count = 0u64;
    let mut x = vec![1u64; d];
    loop {
        if system.iter().all(|f| f.eval_mod(&x, m) == 0) {
            let mat: Vec<Vec<u64>> = jac.iter().map(|row| row.iter().map(|g| g.eval_mod(&x, prime)).collect()).collect();
            if det_mod_p(mat, prime) != 0 {
                count += 1;
            }
        }
        // odometer over [1, m]^d
        let mut i = 0;
        while i < d && x[i] == m {
            x[i] = 1;
            i += 1;
        }
        if i == d {
            break;
        }
        x[i] += 1;
    }
    let degree_bound: ExactInt = system.iter().map(|f| ExactInt::from(f.total_degree())).product();
    let count = ExactInt::from(count);
    Ok(HenselReport { within_bound: count <= degree_bound, count, degree_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn uni(coeffs: &[i64]) -> MultiPoly {
        MultiPoly::new(1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], ExactInt::from(*c))).collect()).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let r = hensel_count(&[uni(&[0, 1])], 5, 2, Budget::DEFAULT).unwrap();
        assert_eq!(r.count, ExactInt::ONE);
        let r = hensel_count(&[uni(&[-1, 0, 1])], 5, 2, Budget::DEFAULT).unwrap();
        assert_eq!(r.count, ExactInt::from(2));
        assert!(r.within_bound);
        // x² has the double root 0, whose Jacobian vanishes mod 5
        assert_eq!(hensel_count(&[uni(&[0, 0, 1])], 5, 2, Budget::DEFAULT).unwrap().count, ExactInt::ZERO);
    }

    #[test]
    fn determinant_mod_p() {
        assert_eq!(det_mod_p(vec![vec![1, 2], vec![3, 4]], 7), 5);
        assert_eq!(det_mod_p(vec![vec![2, 4], vec![1, 2]], 7), 0);
        assert_eq!(det_mod_p(vec![vec![0, 1], vec![1, 0]], 5), 4);
    }

    #[test]
    fn random_quadratic_pairs_respect_degree_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let sys: Vec<MultiPoly> = (0..2)
                .map(|_| {
                    let mut terms = Vec::new();
                    for i in 0..=2u32 {
                        for j in 0..=(2 - i) {
                            terms.push((vec![i, j], ExactInt::from(rng.gen_range(-4i64..=4))));
                        }
                    }
                    terms.push((vec![2, 0], ExactInt::from(rng.gen_range(1i64..=4))));
                    MultiPoly::new(2, terms).unwrap()
                })
                .collect();
            let r = hensel_count(&sys, 5, 2, Budget::DEFAULT).unwrap();
            assert!(r.within_bound, "{sys:?}: {r:?}");
            assert!(r.count <= ExactInt::from(4));
        }
    }

    #[test]
    fn guards() {
        assert!(hensel_count(&[], 5, 1, Budget::DEFAULT).is_err());
        assert!(hensel_count(&[uni(&[0, 1])], 6, 1, Budget::DEFAULT).is_err());
        assert!(hensel_count(&[uni(&[0, 1])], 5, 9, Budget(100)).unwrap_err().is_budget());
        let two = MultiPoly::new(2, vec![(vec![1, 0], ExactInt::ONE)]).unwrap();
        assert!(matches!(hensel_count(&[two], 5, 1, Budget::DEFAULT), Err(Error::DimensionMismatch { .. })));
    }
}
