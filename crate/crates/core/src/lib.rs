//! Exact-arithmetic laboratory for Vinogradov's mean value theorem.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`exactmath`]: overflow-escalating integers, canonical rationals,
//!   integer polynomials, exact linear solves and modular powers.
//! * [`meanvalue`]: exact counts of solutions of the Vinogradov system
//!   `J_{s,k}(X)`, the diagonal oracle, congruence-restricted variants and
//!   scaling ladders.
//! * [`congruence`]: enumeration of the auxiliary congruence systems, their
//!   equivalence-class counts, the Hensel-type solution counter and the
//!   polynomial-identity certificates used to eliminate low powers.
//! * [`exponents`]: closed-form exponent calculators, the permissible
//!   exponent envelope and the iteration ledger replay.
//! * [`analytic`]: floating-point Weyl sums with exact phase reduction,
//!   minor-arc classification, singular series and Waring counts.
//!
//! Threading, file formats and the command-line front end live in the
//! companion `vmv` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod congruence;
mod error;
pub mod exactmath;
pub mod exponents;
pub mod meanvalue;

pub use error::{Error, Result};
pub use exactmath::{ExactInt, ExactRational, IntPolynomial};

/// Cost budget, measured in estimated elementary enumeration steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(500_000_000);

    pub fn check(self, estimated: u128) -> Result<()> {
        if estimated > self.0 {
            Err(Error::BudgetExceeded { estimated, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
