use alloc::vec::Vec;

use super::ExactRational;
use crate::{Error, Result};

/// Solves `matrix · y = rhs` exactly by fraction-exact Gaussian elimination.
pub fn solve_rational_linear(matrix: &[Vec<ExactRational>], rhs: &[ExactRational]) -> Result<Vec<ExactRational>> {
    let n = matrix.len();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rhs.len() });
    }
    if let Some(row) = matrix.iter().find(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: row.len() });
    }
    let mut a: Vec<Vec<ExactRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip().expect("pivot is nonzero");
        for v in a[col][col..].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = &*v - &(&factor * p);
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactInt;
    use alloc::vec;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> ExactRational {
        ExactRational::frac(n, d)
    }

    fn mat_vec(m: &[Vec<ExactRational>], v: &[ExactRational]) -> Vec<ExactRational> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(ExactRational::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn identity_returns_rhs() {
        let id = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let r = vec![q(3, 4), q(-5, 2)];
        assert_eq!(solve_rational_linear(&id, &r).unwrap(), r);
    }

    #[test]
    fn one_by_one() {
        assert_eq!(solve_rational_linear(&[vec![q(2, 1)]], &[q(1, 1)]).unwrap(), vec![q(1, 2)]);
    }

    #[test]
    fn vandermonde_alpha1_beta2() {
        // rows m = 1, 2; columns l = 1, 2; entries (alpha + l)^m with alpha = 1
        let m = vec![vec![q(2, 1), q(3, 1)], vec![q(4, 1), q(9, 1)]];
        let rhs = vec![q(0, 1), q(2, 1)];
        let y = solve_rational_linear(&m, &rhs).unwrap();
        assert_eq!(y, vec![q(-1, 1), q(2, 3)]);
        assert_eq!(mat_vec(&m, &y), rhs);
    }

    #[test]
    fn singular_and_mismatched() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(solve_rational_linear(&m, &[q(1, 1), q(1, 1)]), Err(Error::SingularMatrix));
        assert!(matches!(solve_rational_linear(&m, &[q(1, 1)]), Err(Error::DimensionMismatch { .. })));
        let ragged = vec![vec![q(1, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(matches!(solve_rational_linear(&ragged, &[q(1, 1), q(1, 1)]), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        #[test]
        fn solution_satisfies_system(entries in proptest::collection::vec(-9i64..10, 16), rhs in proptest::collection::vec(-9i64..10, 4)) {
            let m: Vec<Vec<ExactRational>> = entries.chunks(4).map(|r| r.iter().map(|v| ExactRational::from_int(ExactInt::from(*v))).collect()).collect();
            let b: Vec<ExactRational> = rhs.iter().map(|v| ExactRational::from_int(ExactInt::from(*v))).collect();
            match solve_rational_linear(&m, &b) {
                Ok(y) => prop_assert_eq!(mat_vec(&m, &y), b),
                Err(e) => prop_assert_eq!(e, Error::SingularMatrix),
            }
        }
    }
}
