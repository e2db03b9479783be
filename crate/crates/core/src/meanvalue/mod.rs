//! Exact Vinogradov mean values `J_{s,k}(X)`, their congruence-restricted
//! and conditioned variants, and scaling ladders.

mod count;
mod diagonal;
mod ladder;
mod params;
mod restricted;

pub use count::{count_j, count_j_with, count_map, estimate_cost, resolve_strategy, CountConfig, CountOutcome, Strategy};
pub use diagonal::diagonal_oracle;
pub use ladder::{
    fit_slope, holder_check, ladder_from_counts, ladder_preflight, scaling_ladder, HolderReport, Ladder, LadderRow,
};
pub use params::{CountMap, PowerSumKey, PowerSumVector, SystemParams};
pub use restricted::{
    count_j_restricted, sign_patterns, ConditionedBlock, ConditionedFamily, ConditionedMax, ResidueConstraint,
    RestrictedSystem,
};
