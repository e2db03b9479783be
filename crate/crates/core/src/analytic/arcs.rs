use alloc::vec::Vec;

use crate::{Error, ExactInt, ExactRational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcVerdict {
    Major,
    Minor,
}

impl ArcVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ArcVerdict::Major => "major",
            ArcVerdict::Minor => "minor",
        }
    }
}

/// A rational approximation `a/q` and its error `|qα − a|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub a: ExactInt,
    pub q: ExactInt,
    pub distance: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcClassification {
    /// `α` reduced into `[0, 1)`.
    pub alpha: ExactRational,
    pub k: u32,
    pub x: u64,
    pub verdict: ArcVerdict,
    /// Smallest-denominator `(a, q)` meeting both conditions, when major.
    pub witness: Option<Approximation>,
    /// Closest candidate with `q <= X/(2k)`, major or not.
    pub best: Option<Approximation>,
    /// `X / (2k)`.
    pub q_limit: ExactRational,
    /// `X^{1−k} / (2k)`.
    pub tolerance: ExactRational,
}

/// Convergents `p_n/q_n` of `α = num/den`, `0 <= α < 1`, with partial quotients.
fn convergents(alpha: &ExactRational) -> Vec<(ExactInt, ExactInt, ExactInt)> {
    let (mut n, mut d) = (alpha.numer().clone(), alpha.denom().clone());
    let (mut p0, mut q0) = (ExactInt::ONE, ExactInt::ZERO);
    let (mut p1, mut q1) = (ExactInt::ZERO, ExactInt::ONE);
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let a = n.div_floor(&d);
        let r = &n - &(&a * &d);
        if first {
            p1 = a.clone();
            first = false;
        } else {
            let p2 = &(&a * &p1) + &p0;
            let q2 = &(&a * &q1) + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        out.push((p1.clone(), q1.clone(), a));
        if r.is_zero() {
            break;
        }
        (n, d) = (d, r);
    }
    out
}

/// Decides whether `α` lies on a major arc: some coprime `(a, q)` with
/// `q <= X/(2k)` and `|qα − a| <= X^{1−k}/(2k)`.
///
/// The smallest such `q` is a best approximation of the second kind, hence a
/// convergent; semiconvergents are scanned too so `best` is as close as the
/// denominator cut allows.
pub fn classify_arc(alpha: &ExactRational, k: u32, x: u64) -> Result<ArcClassification> {
    if k < 1 || x < 1 {
        return Err(Error::InvalidParameter("classify_arc needs k >= 1 and X >= 1".into()));
    }
    let alpha = alpha.fract();
    let two_k = ExactRational::from_int(2 * k as u64);
    let xq = ExactRational::from_int(x);
    let q_limit = &xq / &two_k;
    let tolerance = &xq.pow(1 - k as i32) / &two_k;
    let q_max = q_limit.floor();

    let mut candidates: Vec<(ExactInt, ExactInt)> = Vec::new();
    let conv = convergents(&alpha);
    for (i, (p, q, _)) in conv.iter().enumerate() {
        if *q > q_max {
            break;
        }
        candidates.push((p.clone(), q.clone()));
        // Largest intermediate fraction between convergents i−1 and i+1 under the cut.
        if i >= 1 && i + 1 < conv.len() {
            let (pp, qp) = (&conv[i - 1].0, &conv[i - 1].1);
            let a_next = &conv[i + 1].2;
            let room = (&q_max - qp).div_floor(q);
            let j = if room < *a_next { room } else { a_next - &ExactInt::ONE };
            if j.is_positive() {
                candidates.push((pp + &(&j * p), qp + &(&j * q)));
            }
        }
    }

    let approx = |(a, q): &(ExactInt, ExactInt)| {
        let distance = (&(&alpha * &ExactRational::from_int(q.clone())) - &ExactRational::from_int(a.clone())).abs();
        Approximation { a: a.clone(), q: q.clone(), distance }
    };
    let mut best: Option<Approximation> = None;
    let mut witness: Option<Approximation> = None;
    for c in &candidates {
        let ap = approx(c);
        debug_assert!(ap.a.gcd(&ap.q).is_one());
        if ap.distance <= tolerance && witness.as_ref().map_or(true, |w| ap.q < w.q) {
            witness = Some(ap.clone());
        }
        let better = match &best {
            None => true,
            Some(b) => ap.distance < b.distance || (ap.distance == b.distance && ap.q < b.q),
        };
        if better {
            best = Some(ap);
        }
    }
    let verdict = if witness.is_some() { ArcVerdict::Major } else { ArcVerdict::Minor };
    Ok(ArcClassification { alpha, k, x, verdict, witness, best, q_limit, tolerance })
}
