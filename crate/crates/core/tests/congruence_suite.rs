use vmv_core::congruence::*;
use vmv_core::{Budget, ExactInt};

#[test]
fn canonical_certificate() {
    let c = lemma32_solve(1, 1, DEFAULT_MAX_BETA).unwrap();
    assert_eq!(c.c, [ExactInt::from(-1), ExactInt::from(1)]);
    assert_eq!(c.d, [ExactInt::from(2), ExactInt::from(1)]);
}

#[test]
fn certificates_verify_on_small_grid() {
    for alpha in 1..=6 {
        for beta in 1..=6 {
            let c = lemma32_solve(alpha, beta, DEFAULT_MAX_BETA).unwrap();
            assert!(c.verify(), "alpha={alpha} beta={beta}");
        }
    }
}

#[test]
fn small_lemma_grid_never_fails() {
    let reports = lemma_grid(&[5, 7], &[3], &[0, 1], &[1, 2], SearchMode::Symmetry, Budget(2_000_000)).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.verdict != Verdict::Fail));
    assert!(reports.iter().any(|r| r.verdict == Verdict::Pass));
}

#[test]
fn hensel_univariate_quadratic() {
    // x^2 − 2 mod 7^2: 2 is a square mod 7, two nonsingular roots lift.
    let f = MultiPoly::new(1, vec![(vec![2], ExactInt::from(1)), (vec![0], ExactInt::from(-2))]).unwrap();
    let r = hensel_count(&[f], 7, 2, Budget::DEFAULT).unwrap();
    assert_eq!(r.count, ExactInt::from(2));
    assert!(r.within_bound);
}
