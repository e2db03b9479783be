//! Thread-parallel drivers around the single-threaded core routines.
//!
//! Exact results are merged by integer addition, so they are identical for
//! every thread count. Floating-point sums are split into fixed-size blocks
//! that do not depend on the thread count and reduced in block order.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use vmv_core::analytic::{eval_f_range, Accumulator, CoefficientVector, Complex64};
use vmv_core::meanvalue::{
    count_map, estimate_cost, ladder_from_counts, ladder_preflight, resolve_strategy, CountConfig, CountMap,
    CountOutcome, Ladder, Strategy, SystemParams,
};
use vmv_core::{Error, Result};

/// Terms per block in [`eval_f_parallel`].
pub const WEYL_BLOCK: u64 = 1 << 16;

/// `f(item)` for every item, returned in item order. Items are handed out
/// dynamically, so uneven work balances across threads.
pub fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                *slots[i].lock().expect("worker panicked") = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("worker panicked").expect("every slot filled")).collect()
}

/// Per-worker fold over `items`; returns one accumulator per worker.
fn par_fold<T: Sync, A: Send>(items: &[T], threads: usize, init: impl Fn() -> A + Sync, step: impl Fn(&mut A, &T) + Sync) -> Vec<A> {
    let threads = threads.clamp(1, items.len().max(1));
    let next = AtomicUsize::new(0);
    let work = || {
        let mut acc = init();
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            let Some(item) = items.get(i) else { break };
            step(&mut acc, item);
        }
        acc
    };
    if threads == 1 {
        return vec![work()];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads).map(|_| scope.spawn(work)).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn split_even(lo: u64, hi: u64, parts: u64) -> Vec<RangeInclusive<u64>> {
    let n = hi - lo + 1;
    let parts = parts.clamp(1, n);
    (0..parts).map(|i| (lo + i * n / parts)..=(lo + (i + 1) * n / parts - 1)).collect()
}

/// Full multiplicity table, partitioned over the outermost variable.
///
/// Direct and symmetry-reduced enumeration take one outer value per work
/// item (the symmetric work is heavily skewed toward small values); the
/// convolution is split into one contiguous range per thread because each
/// item repeats the inner convolutions.
pub fn count_map_parallel(params: &SystemParams, strategy: Strategy, threads: usize) -> CountMap {
    assert!(strategy != Strategy::Auto, "resolve the strategy first");
    if threads <= 1 || params.x == 1 {
        return count_map(params, strategy, 1..=params.x);
    }
    let ranges = match strategy {
        Strategy::Convolution => split_even(1, params.x, threads as u64),
        _ => (1..=params.x).map(|v| v..=v).collect(),
    };
    let parts = par_fold(&ranges, threads, CountMap::new, |acc, r| acc.merge(count_map(params, strategy, r.clone())));
    let mut out = CountMap::new();
    for m in parts {
        out.merge(m);
    }
    out
}

/// [`vmv_core::meanvalue::count_j_with`] on `threads` threads.
pub fn count_j_parallel(params: &SystemParams, strategy: Strategy, config: &CountConfig, threads: usize) -> Result<CountOutcome> {
    let strategy = resolve_strategy(params, strategy, config);
    let estimated_cost = estimate_cost(params, strategy);
    config.budget.check(estimated_cost)?;
    let map = count_map_parallel(params, strategy, threads);
    debug_assert_eq!(map.total(), &vmv_core::ExactInt::from(params.x).pow(params.s));
    Ok(CountOutcome { j: map.sum_of_squares(), strategy, estimated_cost })
}

/// [`vmv_core::meanvalue::scaling_ladder`] with each point counted on `threads` threads.
pub fn scaling_ladder_parallel(k: u32, s: u32, xs: &[u64], strategy: Strategy, config: &CountConfig, threads: usize) -> Result<Ladder> {
    let points = ladder_preflight(k, s, xs, strategy, config)?;
    let mut counts = Vec::with_capacity(points.len());
    for p in points {
        counts.push((p.x, count_j_parallel(&p, strategy, config, threads)?.j));
    }
    Ok(ladder_from_counts(k, s, counts))
}

/// `f_k(α; X)` summed in blocks of [`WEYL_BLOCK`] terms, bit-identical for
/// every thread count.
pub fn eval_f_parallel(coeffs: &CoefficientVector, x: u64, threads: usize) -> Result<Complex64> {
    if x < 1 {
        return Err(Error::InvalidParameter("X must be at least 1".into()));
    }
    let blocks: Vec<RangeInclusive<u64>> =
        (0..x.div_ceil(WEYL_BLOCK)).map(|i| (i * WEYL_BLOCK + 1)..=((i + 1) * WEYL_BLOCK).min(x)).collect();
    let partials = par_map(&blocks, threads, |r| eval_f_range(coeffs, r.clone()));
    let mut acc = Accumulator::default();
    for p in partials {
        acc.add(p);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use vmv_core::meanvalue::count_j;
    use vmv_core::{Budget, ExactRational};

    #[test]
    fn split_covers_range() {
        let parts = split_even(1, 10, 3);
        assert_eq!(parts, vec![1..=3, 4..=6, 7..=10]);
        assert_eq!(split_even(1, 2, 8).len(), 2);
    }

    #[test]
    fn par_map_keeps_order() {
        let items: Vec<u64> = (0..100).collect();
        assert_eq!(par_map(&items, 7, |v| v * v), items.iter().map(|v| v * v).collect::<Vec<_>>());
        assert!(par_map(&[] as &[u64], 4, |v| *v).is_empty());
    }

    #[test]
    fn counts_match_sequential_for_every_strategy_and_thread_count() {
        let cfg = CountConfig::default();
        for (k, s, x) in [(2, 3, 9), (3, 2, 12), (1, 4, 6), (3, 3, 7)] {
            let p = SystemParams::new(k, s, x).unwrap();
            let want = count_j(&p, Strategy::Direct, Budget::DEFAULT).unwrap();
            for st in [Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution, Strategy::Auto] {
                for t in [1, 2, 3, 8] {
                    assert_eq!(count_j_parallel(&p, st, &cfg, t).unwrap().j, want, "k={k} s={s} X={x} {st:?} t={t}");
                }
            }
        }
    }

    #[test]
    fn weyl_blocks_are_thread_independent() {
        let c = CoefficientVector::new(vec![ExactRational::frac(1, 7), ExactRational::frac(3, 1001)]).unwrap();
        let x = 3 * WEYL_BLOCK + 17;
        let one = eval_f_parallel(&c, x, 1).unwrap();
        for t in [2, 3, 5] {
            assert_eq!(eval_f_parallel(&c, x, t).unwrap(), one);
        }
        let seq = vmv_core::analytic::eval_f(&c, x).unwrap();
        assert!((one - seq).norm() < 1e-6);
    }
}
