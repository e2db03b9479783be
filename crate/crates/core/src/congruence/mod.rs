//! Congruence solution sets and their equivalence-class counts, the bounds
//! on those counts, the Hensel-type solution counter and the polynomial
//! identities used to eliminate low powers.

mod classes;
mod hensel;
mod lemma;
mod lemma32;

pub use classes::{enumerate_b, max_b, target_of, BFamily, ClassCount, CongruenceInstance, LiftMode, MaxB, SearchMode, WITNESS_CAP};
pub use hensel::{det_mod_p, hensel_count, HenselReport, MultiPoly};
pub use lemma::{elimination_constants, lemma_grid, verify_lemma_bound, LemmaId, LemmaReport, Verdict};
pub use lemma32::{lemma32_solve, Lemma32Certificate, DEFAULT_MAX_BETA};
