use std::path::PathBuf;

use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] vmv_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("config file {}: {message}", path.display())]
    Config { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => EXIT_BUDGET,
            _ => EXIT_INVALID,
        }
    }

    pub fn kind(&self) -> &'static str {
        use vmv_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::BudgetExceeded { .. } => "budget-exceeded",
                E::LadderBudgetExceeded { .. } => "ladder-budget-exceeded",
                E::SingularMatrix => "singular-matrix",
                E::DimensionMismatch { .. } => "dimension-mismatch",
                E::ZeroDenominator => "zero-denominator",
                E::OutOfRange { .. } => "out-of-range",
                E::InvalidParameter(_) => "invalid-parameter",
                E::InvalidConstraint(_) => "invalid-constraint",
                E::InvalidInstance(_) => "invalid-instance",
                E::Precondition(_) => "precondition",
                E::InvalidChoice { .. } => "invalid-choice",
                E::Parse(_) => "parse",
            },
            CliError::Usage(_) => "usage",
            CliError::Config { .. } => "config",
            CliError::Io { .. } => "io",
        }
    }

    /// The structured diagnostic printed on stderr and stored in the manifest.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Core(e) = self {
            match e {
                vmv_core::Error::BudgetExceeded { estimated, budget } => {
                    v["estimated"] = json!(estimated.to_string());
                    v["budget"] = json!(budget.to_string());
                }
                vmv_core::Error::LadderBudgetExceeded { x, estimated, budget } => {
                    v["x"] = json!(x);
                    v["estimated"] = json!(estimated.to_string());
                    v["budget"] = json!(budget.to_string());
                }
                _ => {}
            }
        }
        json!({ "error": v })
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
