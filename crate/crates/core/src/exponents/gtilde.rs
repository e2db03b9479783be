use alloc::format;
use alloc::vec::Vec;

use super::bounds::delta_value;
use crate::{Error, ExactRational, Result};

/// The two closed forms whose minimum bounds `Γ̃(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GtildeFormula {
    /// Scan over `j` with `2^j <= k² − k − 1`.
    Dyadic,
    /// Scan over `(m, t)` using `Δ_{t,k}`.
    NearOptimal,
}

impl GtildeFormula {
    pub fn name(self) -> &'static str {
        match self {
            GtildeFormula::Dyadic => "dyadic",
            GtildeFormula::NearOptimal => "near-optimal",
        }
    }
}

/// One formula evaluated over its grid: `bound = offset − max_term`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaEval<P> {
    pub bound: i64,
    pub max_term: i64,
    pub maximizers: Vec<P>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gtilde {
    pub k: u64,
    pub bound: i64,
    pub dyadic: FormulaEval<u64>,
    /// Maximizers are `(m, t)`.
    pub near_optimal: FormulaEval<(u64, u64)>,
    /// Formulas attaining the minimum; both on a tie.
    pub provenance: Vec<GtildeFormula>,
    /// `s_1(k) = min_j s_0(k, j)`, exact.
    pub s1: ExactRational,
    /// When `s_1` is an integer the `[s_1] + 1` reading is ambiguous; flag it.
    pub s1_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtildePlus {
    pub k: u64,
    pub bound: i64,
    pub dyadic: FormulaEval<u64>,
    pub near_optimal: FormulaEval<(u64, u64)>,
    pub provenance: Vec<GtildeFormula>,
}

fn check_k(k: u64) -> Result<()> {
    if !(3..=2000).contains(&k) {
        return Err(Error::OutOfRange { what: "k", detail: format!("k = {k} outside [3, 2000]") });
    }
    Ok(())
}

/// `j` in `[0, k − 2]` with `2^j <= k² − k − 1`.
fn dyadic_grid(k: u64) -> impl Iterator<Item = u64> {
    (0..=k - 2).take_while(move |&j| j < 63 && (1u64 << j) < k * k - k)
}

/// `(m, t)` in `[1, k] × [1, k − 1]` with `2(t−1)(k+1) + m(m−1) < 2k² − 2`.
fn near_optimal_grid(k: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=k).flat_map(move |m| (1..k).map(move |t| (m, t))).filter(move |&(m, t)| 2 * (t - 1) * (k + 1) + m * (m - 1) < 2 * k * k - 2)
}

fn ceil_i64(x: &ExactRational) -> i64 {
    x.ceil().to_i64().expect("ceiling fits in i64")
}

fn scan<P: Copy>(grid: impl Iterator<Item = P>, offset: i64, term: impl Fn(P) -> ExactRational) -> FormulaEval<P> {
    let mut max_term = i64::MIN;
    let mut maximizers = Vec::new();
    for p in grid {
        let v = ceil_i64(&term(p));
        if v > max_term {
            max_term = v;
            maximizers.clear();
        }
        if v == max_term {
            maximizers.push(p);
        }
    }
    FormulaEval { bound: offset - max_term, max_term, maximizers }
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::frac(n as i128, d as i128)
}

/// `(2(k−1)(j+1) − 2^{j+1}) / (k − j)`, the quantity subtracted in `s_0(k, j)`.
fn dyadic_term(k: u64, j: u64) -> ExactRational {
    let (k, j) = (k as i64, j as i64);
    q(2 * (k - 1) * (j + 1) - (1i64 << (j + 1)), k - j)
}

fn near_optimal_term(k: u64, m: u64, t: u64, half: bool) -> ExactRational {
    let (ki, mi, ti) = (k as i64, m as i64, t as i64);
    let num = if half {
        &q((ti - 1) * (ki + 1), 1) - &q(mi * (mi - 1), 2)
    } else {
        q(2 * (ki + 1) * (ti - 1) - mi * (mi - 1), 1)
    };
    let den = &ExactRational::one() + &(&delta_value(t, k) / &q(mi, 1));
    &num / &den
}

fn provenance(a: i64, b: i64) -> Vec<GtildeFormula> {
    let mut out = Vec::new();
    if a <= b {
        out.push(GtildeFormula::Dyadic);
    }
    if b <= a {
        out.push(GtildeFormula::NearOptimal);
    }
    out
}

/// `s_1(k) = min_j s_0(k, j)` with `s_0(k, j) = 2k² − 2k − dyadic_term`.
pub fn s1(k: u64) -> Result<ExactRational> {
    check_k(k)?;
    let max = dyadic_grid(k).map(|j| dyadic_term(k, j)).max().expect("j = 0 is always admissible");
    Ok(&q((2 * k * k - 2 * k) as i64, 1) - &max)
}

/// Upper bound for `Γ̃(k)`: the smaller of the two closed forms.
pub fn gtilde(k: u64) -> Result<Gtilde> {
    check_k(k)?;
    let ki = k as i64;
    let dyadic = scan(dyadic_grid(k), 2 * ki * ki - 2 * ki + 1, |j| dyadic_term(k, j));
    let near_optimal = scan(near_optimal_grid(k), 2 * ki * ki - 1, |(m, t)| near_optimal_term(k, m, t, false));
    let s1 = s1(k)?;
    Ok(Gtilde {
        k,
        bound: dyadic.bound.min(near_optimal.bound),
        provenance: provenance(dyadic.bound, near_optimal.bound),
        dyadic,
        near_optimal,
        s1_integral: s1.is_integer(),
        s1,
    })
}

/// Upper bound for `Γ̃⁺(k)`.
pub fn gtilde_plus(k: u64) -> Result<GtildePlus> {
    check_k(k)?;
    let ki = k as i64;
    let dyadic = scan(dyadic_grid(k), ki * ki - ki + 1, |j| {
        let (j, ki) = (j as i64, k as i64);
        q((ki - 1) * (j + 1) - (1i64 << j), ki - j)
    });
    let near_optimal = scan(near_optimal_grid(k), ki * ki, |(m, t)| near_optimal_term(k, m, t, true));
    Ok(GtildePlus {
        k,
        bound: dyadic.bound.min(near_optimal.bound),
        provenance: provenance(dyadic.bound, near_optimal.bound),
        dyadic,
        near_optimal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollary17 {
    pub k: u64,
    pub theta: i64,
    /// `2k² − 2k − θ_k`.
    pub bound: i64,
    pub gtilde: i64,
    /// `gtilde(k) <= bound`.
    pub consistent: bool,
}

/// Piecewise `θ_k` table: 8 at `k = 6`, 9 on `[7, 13]`, 10 on `[14, 19]`, 12 from 20.
pub fn corollary17_table(k: u64) -> Result<Corollary17> {
    if k < 6 {
        return Err(Error::OutOfRange { what: "k", detail: format!("k = {k} but the table starts at k = 6") });
    }
    let theta = match k {
        6 => 8,
        7..=13 => 9,
        14..=19 => 10,
        _ => 12,
    };
    let ki = k as i64;
    let bound = 2 * ki * ki - 2 * ki - theta;
    let g = gtilde(k)?.bound;
    Ok(Corollary17 { k, theta, bound, gtilde: g, consistent: g <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    /// Independent oracle: integer-only ceilings, `ceil(a/b) = -floor(-a/b)`.
    fn ceil_frac(n: i128, d: i128) -> i128 {
        -Integer::div_floor(&-n, &d)
    }

    fn oracle_gtilde(k: i128) -> i128 {
        let mut f1 = i128::MIN;
        for r in 0..=k - 2 {
            if (1i128 << r) < k * k - k {
                f1 = f1.max(ceil_frac(2 * (k - 1) * (r + 1) - (1 << (r + 1)), k - r));
            }
        }
        let mut f2 = i128::MIN;
        for m in 1..=k {
            for t in 1..k {
                if 2 * (t - 1) * (k + 1) + m * (m - 1) < 2 * k * k - 2 {
                    // x / (1 + t(t−1)(k+1) / (2m(k−1))) = x·2m(k−1) / (2m(k−1) + t(t−1)(k+1))
                    let num = (2 * (k + 1) * (t - 1) - m * (m - 1)) * 2 * m * (k - 1);
                    let den = 2 * m * (k - 1) + t * (t - 1) * (k + 1);
                    f2 = f2.max(ceil_frac(num, den));
                }
            }
        }
        (2 * k * k - 2 * k + 1 - f1).min(2 * k * k - 1 - f2)
    }

    #[test]
    fn printed_values() {
        for (k, v) in [(6, 52), (7, 75), (8, 103), (9, 135), (20, 748)] {
            assert_eq!(gtilde(k).unwrap().bound, v, "k = {k}");
        }
        let g20 = gtilde(20).unwrap();
        assert_eq!(g20.provenance, alloc::vec![GtildeFormula::NearOptimal]);
        assert!(g20.near_optimal.maximizers.contains(&(9, 7)));
    }

    #[test]
    fn agrees_with_integer_oracle() {
        for k in 3..=60u64 {
            assert_eq!(gtilde(k).unwrap().bound as i128, oracle_gtilde(k as i128), "k = {k}");
        }
    }

    #[test]
    fn small_k_values() {
        let v: Vec<i64> = (3..=5).map(|k| gtilde(k).unwrap().bound).collect();
        assert_eq!(v, [11, 20, 33]);
    }

    #[test]
    fn middle_range_is_2k2_minus_2k_minus_9() {
        for k in 7..=13u64 {
            let ki = k as i64;
            assert_eq!(gtilde(k).unwrap().bound, 2 * ki * ki - 2 * ki - 9);
        }
    }

    #[test]
    fn s1_floor_plus_one_matches_dyadic() {
        for k in 3..=80u64 {
            let g = gtilde(k).unwrap();
            let via_s1 = g.s1.floor().to_i64().unwrap() + 1;
            assert_eq!(via_s1, g.dyadic.bound, "k = {k}");
        }
        assert_eq!(s1(6).unwrap(), ExactRational::from_int(51));
        assert!(gtilde(6).unwrap().s1_integral);
    }

    #[test]
    fn corollary_table() {
        let c = corollary17_table(6).unwrap();
        assert_eq!((c.theta, c.bound, c.gtilde), (8, 52, 52));
        assert_eq!(corollary17_table(14).unwrap().theta, 10);
        let c = corollary17_table(20).unwrap();
        assert_eq!((c.theta, c.bound, c.gtilde), (12, 748, 748));
        for k in 6..=30 {
            assert!(corollary17_table(k).unwrap().consistent, "k = {k}");
        }
        assert!(corollary17_table(5).is_err());
    }

    #[test]
    fn plus_values() {
        let g = gtilde_plus(6).unwrap();
        assert_eq!(g.bound, 26);
        assert_eq!(g.dyadic.max_term, 5);
        assert_eq!(g.dyadic.maximizers, alloc::vec![4]);
        assert!(g.provenance.contains(&GtildeFormula::Dyadic));
        // Frozen from an independent Fraction-based evaluation of both grids.
        let small: Vec<i64> = (3..=7).map(|k| gtilde_plus(k).unwrap().bound).collect();
        assert_eq!(small, [6, 10, 17, 26, 38]);
        for k in 3..=60u64 {
            assert!(gtilde_plus(k).unwrap().bound <= (k * k - k + 1) as i64);
        }
    }

    #[test]
    fn rejects_small_k() {
        assert!(gtilde(2).is_err());
        assert!(gtilde_plus(1).is_err());
    }
}
