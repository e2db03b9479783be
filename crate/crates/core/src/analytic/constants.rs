use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;

use super::coeffs::{e, Accumulator};
use super::waring::{complete_sum, unit_table, SeriesTruncation};
use crate::exactmath::{mod_pow_u64, mul_mod_u64};
use crate::{Budget, Error, Result};

/// Eight-point Gauss–Legendre rule on `[−1, 1]`, positive half.
const GL_NODES: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL_WEIGHTS: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

/// Truncated singular integral with refinement diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralTruncation {
    pub value: f64,
    /// The box actually integrated: `[−h·N, h·N]^k` with `N = ⌈B·grid⌉`.
    pub half_width: f64,
    pub cells_per_unit: u64,
    /// Same box at half the density, when `grid` is even.
    pub coarse: Option<f64>,
    /// `value + (value − coarse)/3`, the midpoint-rule extrapolation.
    pub richardson: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanValueConstants {
    pub singular_series: SeriesTruncation,
    pub singular_integral: IntegralTruncation,
}

/// `∫_0^1 e(β_1 γ + … + β_k γ^k) dγ`, composite Gauss–Legendre with
/// about one panel per oscillation.
pub fn inner_integral(beta: &[f64]) -> Complex64 {
    let slope: f64 = beta.iter().enumerate().map(|(j, b)| (j + 1) as f64 * libm::fabs(*b)).sum();
    let panels = libm::ceil(slope) as usize + 1;
    let width = 1.0 / panels as f64;
    let mut acc = Accumulator::default();
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        for (node, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            for g in [mid - node * width / 2.0, mid + node * width / 2.0] {
                let mut phase = 0.0;
                for b in beta.iter().rev() {
                    phase = (phase + b) * g;
                }
                acc.add(e(phase - libm::round(phase)) * (w * width / 2.0));
            }
        }
    }
    acc.value()
}

fn integral_cost(k: usize, b: f64, grid: u64) -> u128 {
    let n = libm::ceil(b * grid as f64) as u128;
    let per = 8 * (libm::ceil((k * (k + 1)) as f64 / 2.0 * b) as u128 + 2);
    (2 * n).saturating_pow(k as u32).saturating_mul(per)
}

/// Tensor midpoint rule for `∫_{[−B,B]^k} |inner(β)|^{2s} dβ`.
///
/// Cells are summed shell by shell outward from the origin, so enlarging `B`
/// only appends nonnegative terms and the result never decreases.
fn midpoint(s: u32, k: usize, n: u64, h: f64) -> f64 {
    let mut shells = vec![0.0f64; n as usize + 1];
    let mut idx = vec![-(n as i64); k];
    let mut beta = vec![0.0f64; k];
    loop {
        let mut level = 0;
        for (j, &i) in idx.iter().enumerate() {
            beta[j] = (i as f64 + 0.5) * h;
            level = level.max(if i >= 0 { i + 1 } else { -i } as usize);
        }
        shells[level] += libm::pow(inner_integral(&beta).norm_sqr(), s as f64);
        // Odometer over [−n, n)^k in lexicographic order.
        let mut j = k;
        loop {
            if j == 0 {
                let vol = libm::pow(h, k as f64);
                return shells.iter().fold(0.0, |a, v| a + v) * vol;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < n as i64 {
                break;
            }
            idx[j] = -(n as i64);
        }
    }
}

pub fn singular_integral(s: u32, k: usize, b: f64, grid: u64, budget: Budget) -> Result<IntegralTruncation> {
    if k < 1 || s < 1 || grid < 1 || b.is_nan() || b <= 0.0 {
        return Err(Error::InvalidParameter("singular integral needs s, k, grid >= 1 and B > 0".into()));
    }
    budget.check(integral_cost(k, b, grid))?;
    let n = libm::ceil(b * grid as f64) as u64;
    let h = 1.0 / grid as f64;
    let value = midpoint(s, k, n, h);
    let coarse = (grid % 2 == 0).then(|| midpoint(s, k, n.div_ceil(2), 2.0 * h));
    // Coarse boxes differ when n is odd; only extrapolate on matching boxes.
    let richardson = coarse.filter(|_| n % 2 == 0).map(|c| value + (value - c) / 3.0);
    Ok(IntegralTruncation { value, half_width: n as f64 * h, cells_per_unit: grid, coarse, richardson })
}

/// `Σ_{q<=Q} Σ_{a mod q, (a_1,…,a_k,q)=1} |q^{−1} Σ_r e((a_1 r + … + a_k r^k)/q)|^{2s}`.
pub fn singular_series_mean_value(s: u32, k: usize, q_max: u64, budget: Budget) -> Result<SeriesTruncation> {
    if k < 1 || q_max < 1 {
        return Err(Error::InvalidParameter("singular series needs k >= 1 and Q >= 1".into()));
    }
    let cost = (1..=q_max as u128).fold(0u128, |acc, q| acc.saturating_add(q.saturating_pow(k as u32 + 1).saturating_mul(k as u128)));
    budget.check(cost)?;

    let mut partial = Vec::with_capacity(q_max as usize);
    let mut total = 0.0f64;
    for q in 1..=q_max {
        let table = unit_table(q);
        // pw[r][j] = r^{j+1} mod q
        let pw: Vec<Vec<u64>> = (1..=q).map(|r| (1..=k as u64).map(|j| mod_pow_u64(r, j, q)).collect()).collect();
        let mut a = vec![1u64; k];
        let mut hist = vec![0u64; q as usize];
        let mut shell = 0.0;
        'tuples: loop {
            if a.iter().fold(q, |g, &x| g.gcd(&x)) == 1 {
                hist.iter_mut().for_each(|c| *c = 0);
                for row in &pw {
                    let m = row.iter().zip(&a).fold(0u64, |acc, (p, x)| (acc + mul_mod_u64(*p, *x, q)) % q);
                    hist[m as usize] += 1;
                }
                let sq = complete_sum(&hist, &table);
                shell += libm::pow(sq.norm_sqr(), s as f64);
            }
            let mut j = k;
            loop {
                if j == 0 {
                    break 'tuples;
                }
                j -= 1;
                a[j] += 1;
                if a[j] <= q {
                    break;
                }
                a[j] = 1;
            }
        }
        total += shell;
        partial.push(total);
    }
    let value = partial[partial.len() - 1];
    let lo = (q_max / 10).max(1);
    let tail = (lo..=q_max).map(|qq| libm::fabs(value - partial[qq as usize - 1])).fold(0.0, f64::max);
    Ok(SeriesTruncation { value, imag: 0.0, tail, q_max })
}

/// Truncations of `𝔖(s,k)` and `𝒥(s,k)`. Best effort: no error bound is claimed.
pub fn mean_value_constants(s: u32, k: usize, q_max: u64, b: f64, grid: u64, budget: Budget) -> Result<MeanValueConstants> {
    Ok(MeanValueConstants {
        singular_series: singular_series_mean_value(s, k, q_max, budget)?,
        singular_integral: singular_integral(s, k, b, grid, budget)?,
    })
}
