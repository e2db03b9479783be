//! Closed-form exponent calculators, the envelope of permissible mean value
//! exponents, and a replay of the iteration's recurrence ledger.
//!
//! Everything here is exact: ceilings, floors and comparisons run over
//! [`ExactRational`](crate::ExactRational).

mod bounds;
mod envelope;
mod gtilde;
mod ledger;
mod misc;

pub use bounds::{
    delta, kappa_params, nu, quasi_diagonal_r_max, BoundKind, BoundSource, ExponentBound, KappaMode, KappaParams, SRange,
};
pub use envelope::{envelope, envelope_with, BoundFamily, Envelope};
pub use gtilde::{corollary17_table, gtilde, gtilde_plus, s1, Corollary17, FormulaEval, Gtilde, GtildeFormula, GtildePlus};
pub use ledger::{ledger_replay, HChoices, LedgerCheck, LedgerParams, LedgerState, LedgerTrace};
pub use misc::{hua_c, hua_s, misc_exponents, sigma, tarry, tau, MiscExponents, TarryBound};
