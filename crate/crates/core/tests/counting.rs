use vmv_core::meanvalue::*;
use vmv_core::{Budget, ExactInt};

const STRATEGIES: [Strategy; 4] = [Strategy::Auto, Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution];

#[test]
fn diagonal_regime_matches_oracle() {
    for k in 1..=4u32 {
        for s in 1..=k {
            for x in 1..=8u64 {
                let p = SystemParams::new(k, s, x).unwrap();
                let j = count_j(&p, Strategy::Auto, Budget::DEFAULT).unwrap();
                assert_eq!(j, diagonal_oracle(&p), "k={k} s={s} X={x}");
            }
        }
    }
}

#[test]
fn strategies_agree_and_dominate_diagonal() {
    for k in 1..=3u32 {
        for s in 1..=3u32 {
            for x in 1..=7u64 {
                let p = SystemParams::new(k, s, x).unwrap();
                let vals: Vec<ExactInt> = STRATEGIES.iter().map(|&st| count_j(&p, st, Budget::DEFAULT).unwrap()).collect();
                assert!(vals.windows(2).all(|w| w[0] == w[1]), "k={k} s={s} X={x}: {vals:?}");
                assert!(vals[0] >= ExactInt::from(x).pow(s));
            }
        }
    }
}

#[test]
fn partitioned_maps_merge_to_whole() {
    let p = SystemParams::new(3, 3, 9).unwrap();
    for st in [Strategy::Direct, Strategy::SymmetryReduced, Strategy::Convolution] {
        let whole = count_map(&p, st, 1..=9);
        let mut merged = count_map(&p, st, 1..=4);
        merged.merge(count_map(&p, st, 5..=9));
        assert_eq!(merged.sum_of_squares(), whole.sum_of_squares(), "{st:?}");
    }
}

#[test]
fn linear_ladder_slope() {
    let ladder = scaling_ladder(3, 1, &[8, 16, 32, 64], Strategy::Auto, &CountConfig::default()).unwrap();
    assert!((ladder.slope.unwrap() - 1.0).abs() < 1e-9);
}
