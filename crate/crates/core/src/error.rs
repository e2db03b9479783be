use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("estimated cost {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("ladder point X = {x} is infeasible: estimated cost {estimated} exceeds budget {budget}")]
    LadderBudgetExceeded { x: u64, estimated: u128, budget: u128 },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid congruence instance: {0}")]
    InvalidInstance(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid choice at step {step}: h = {value} outside [0, {max}]")]
    InvalidChoice { step: i64, value: String, max: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the budget family of errors (the CLI maps these to exit code 2).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::LadderBudgetExceeded { .. })
    }
}
