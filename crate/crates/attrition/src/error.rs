//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by construction, verification and scenario I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two values indexed by different type spaces were combined.
    #[error("type space mismatch: operands are indexed by different type spaces")]
    SpaceMismatch,

    /// A type space failed its construction invariants.
    #[error("invalid type space: {0}")]
    InvalidTypeSpace(String),

    /// A belief vector failed its construction invariants.
    #[error("invalid belief: {0}")]
    InvalidBelief(String),

    /// An action outside the model's closed action interval.
    #[error("action {action} outside the action domain [{lo}, {hi}]")]
    ActionOutOfDomain { action: f64, lo: f64, hi: f64 },

    /// A numeric parameter outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A payoff evaluation produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// The flow-indifference equation has no admissible root. This is an
    /// informative outcome: no attrition candidate exists for the inputs.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Candidate construction aborted at a specific attrition period.
    #[error("construction failed at period {period}: {source}")]
    Construction {
        period: usize,
        #[source]
        source: Box<Error>,
    },

    /// Scenario configuration could not be parsed or validated.
    #[error("config error{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        message: String,
    },

    /// File I/O failure, with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
