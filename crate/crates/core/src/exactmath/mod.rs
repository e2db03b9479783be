//! Exact integer, rational, modular and integer-polynomial arithmetic.

mod int;
mod linalg;
mod modular;
mod poly;
mod rational;

pub use int::ExactInt;
pub use linalg::solve_rational_linear;
pub use modular::{is_prime, mod_inverse_u64, mod_pow, mod_pow_u64, mul_mod_u64};
pub use poly::{poly_expand_shift, IntPolynomial};
pub use rational::ExactRational;
