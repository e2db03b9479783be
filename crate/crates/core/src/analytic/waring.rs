use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;

use super::coeffs::{e, Accumulator};
use crate::exactmath::{mod_pow_u64, mul_mod_u64};
use crate::{Budget, Error, ExactInt, Result};

fn kth_powers_upto(k: u32, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1u64;
    while let Some(p) = x.checked_pow(k) {
        if p > n {
            break;
        }
        out.push(p);
        x += 1;
    }
    out
}

/// `R_{s,k}(m)` for every `0 <= m <= n`: ordered `s`-tuples of positive
/// integers with `x_1^k + … + x_s^k = m`.
pub fn waring_counts_upto(s: u32, k: u32, n: u64, budget: Budget) -> Result<Vec<ExactInt>> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let powers = kth_powers_upto(k, n);
    budget.check(s as u128 * (n as u128 + 1) * powers.len().max(1) as u128)?;
    let len = usize::try_from(n).map_err(|_| Error::InvalidParameter("n too large".into()))? + 1;
    let mut ways = vec![ExactInt::ZERO; len];
    ways[0] = ExactInt::ONE;
    for _ in 0..s {
        let mut next = vec![ExactInt::ZERO; len];
        for (m, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for &p in &powers {
                let t = m + p as usize;
                if t >= len {
                    break;
                }
                next[t] += w;
            }
        }
        ways = next;
    }
    Ok(ways)
}

pub fn waring_count(s: u32, k: u32, n: u64, budget: Budget) -> Result<ExactInt> {
    Ok(waring_counts_upto(s, k, n, budget)?.pop().expect("nonempty"))
}

/// Truncated singular series and a convergence heuristic.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTruncation {
    pub value: f64,
    /// Imaginary residue of the complex partial sum; zero up to rounding.
    pub imag: f64,
    /// Largest `|S(Q) − S(q')|` over `q'` in the last decade `[Q/10, Q]`.
    pub tail: f64,
    pub q_max: u64,
}

/// `q^{−1} Σ_{r=1}^q e(a r^k / q)` from a residue histogram.
///
/// When `q >= 2` and every residue class is hit equally often the sum is
/// exactly zero, so it is returned as zero instead of as rounding noise.
pub(crate) fn complete_sum(hist: &[u64], table: &[Complex64]) -> Complex64 {
    let first = hist[0];
    if hist.len() > 1 && hist.iter().all(|&c| c == first) {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = Accumulator::default();
    for (c, u) in hist.iter().zip(table) {
        if *c != 0 {
            acc.add(u * *c as f64);
        }
    }
    acc.value() / hist.len() as f64
}

/// `e(m/q)` for `m` in `[0, q)`, each evaluated once from the reduced fraction.
pub(crate) fn unit_table(q: u64) -> Vec<Complex64> {
    (0..q)
        .map(|m| {
            let t = if 2 * m > q { m as f64 / q as f64 - 1.0 } else { m as f64 / q as f64 };
            e(t)
        })
        .collect()
}

/// `Σ_{q<=Q} Σ_{(a,q)=1} (q^{−1} Σ_r e(a r^k/q))^s e(−na/q)`.
pub fn singular_series_waring(s: u32, k: u32, n: u64, q_max: u64, budget: Budget) -> Result<SeriesTruncation> {
    if k < 1 || q_max < 1 {
        return Err(Error::InvalidParameter("singular series needs k >= 1 and Q >= 1".into()));
    }
    let q = q_max as u128;
    budget.check(q * q * q / 3 + q)?;

    let mut partial = Vec::with_capacity(q_max as usize);
    let mut total = Accumulator::default();
    for q in 1..=q_max {
        let table = unit_table(q);
        let powers: Vec<u64> = (1..=q).map(|r| mod_pow_u64(r % q, k as u64, q)).collect();
        let mut hist = vec![0u64; q as usize];
        for a in 1..=q {
            if a.gcd(&q) != 1 {
                continue;
            }
            hist.iter_mut().for_each(|c| *c = 0);
            for &p in &powers {
                hist[mul_mod_u64(a, p, q) as usize] += 1;
            }
            let sq = complete_sum(&hist, &table);
            if sq == Complex64::new(0.0, 0.0) {
                continue;
            }
            let twist = table[((q - mul_mod_u64(a, n % q, q)) % q) as usize];
            total.add(sq.powu(s) * twist);
        }
        partial.push(total.value());
    }
    let value = partial[partial.len() - 1];
    let lo = (q_max / 10).max(1);
    let tail = (lo..=q_max).map(|qq| (value - partial[qq as usize - 1]).norm()).fold(0.0, f64::max);
    Ok(SeriesTruncation { value: value.re, imag: value.im, tail, q_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: u32, k: u32, n: u64) -> u64 {
        waring_count(s, k, n, Budget::DEFAULT).unwrap().to_u64().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(count(2, 2, 25), 2);
        assert_eq!(count(2, 3, 1729), 4);
        for n in 1..200u64 {
            let is_cube = (1..=6u64).any(|x| x * x * x == n);
            assert_eq!(count(1, 3, n), is_cube as u64);
        }
    }

    #[test]
    fn cumulative_counts_match_enumeration() {
        // #{x in N^3 : x_1^2 + x_2^2 + x_3^2 <= n} by direct loops.
        let n = 10_000u64;
        let r = waring_counts_upto(3, 2, n, Budget::DEFAULT).unwrap();
        let mut cumulative = ExactInt::ZERO;
        for v in &r {
            cumulative += v;
        }
        let mut direct = 0u64;
        for a in 1..=100u64 {
            for b in 1..=100u64 {
                for c in 1..=100u64 {
                    if a * a + b * b + c * c <= n {
                        direct += 1;
                    }
                }
            }
        }
        assert_eq!(cumulative, ExactInt::from(direct));
    }

    #[test]
    fn q_equals_one_term() {
        let t = singular_series_waring(5, 2, 1000, 1, Budget::DEFAULT).unwrap();
        assert_eq!(t.value, 1.0);
        assert_eq!(t.tail, 0.0);
    }

    #[test]
    fn linear_case_telescopes_to_one() {
        for n in [1u64, 7, 100, 12345] {
            let t = singular_series_waring(2, 1, n, 60, Budget::DEFAULT).unwrap();
            assert_eq!(t.value, 1.0);
            assert_eq!(t.imag, 0.0);
        }
    }

    #[test]
    fn sums_of_five_squares_settle() {
        let mut prev: Option<SeriesTruncation> = None;
        for q in [25u64, 50, 100, 200] {
            let t = singular_series_waring(5, 2, 1001, q, Budget::DEFAULT).unwrap();
            assert!(t.value > 0.0 && t.value < 5.0);
            assert!(t.imag.abs() < 1e-9);
            if let Some(p) = prev {
                assert!((t.value - p.value).abs() <= p.tail, "Q = {q}");
                assert!((t.value - p.value).abs() < 0.05);
            }
            prev = Some(t);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(singular_series_waring(5, 2, 10, 1000, Budget(1000)).unwrap_err().is_budget());
        assert!(waring_count(4, 2, 1_000_000, Budget(1000)).unwrap_err().is_budget());
    }
}
