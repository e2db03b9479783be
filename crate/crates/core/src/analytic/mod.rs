//! Weyl sums with exact phase reduction, minor-arc classification, the
//! fractional-parts search, Waring counts and truncated singular series
//! and integrals.
//!
//! Coefficients are exact rationals. Each phase `ψ(x; α)` is reduced mod 1
//! exactly before `e(·)` is evaluated once in double precision.

mod arcs;
mod coeffs;
mod constants;
mod fracmin;
mod sums;
mod waring;

pub use arcs::{classify_arc, Approximation, ArcClassification, ArcVerdict};
pub use coeffs::{Accumulator, CoefficientVector};
pub use constants::{
    inner_integral, mean_value_constants, singular_integral, singular_series_mean_value, IntegralTruncation,
    MeanValueConstants,
};
pub use fracmin::{fractional_min_search, FracMin};
pub use sums::{eval_f, eval_f_range, eval_g};
pub use waring::{singular_series_waring, waring_count, waring_counts_upto, SeriesTruncation};

pub use num_complex::Complex64;
