use thiserror::Error;

/// Crate-wide error type.
///
/// `RejectedInput` is reserved for hypothesis failures: the caller asked a
/// question whose preconditions do not hold (for example a monotonicity gap
/// for a non-admissible pair). Downstream code must never count a rejected
/// input as a violated identity.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("sample list must be non-empty")]
    EmptySamples,

    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("lattice of {nodes} nodes exceeds the budget of {budget}")]
    BudgetExceeded { nodes: usize, budget: usize },

    #[error("singular point: |Xu| = 0 with p = {p} < 2")]
    SingularPoint { p: f64 },

    #[error("mollification radius {eps} below the lattice spacing {h}")]
    KernelTooNarrow { eps: f64, h: f64 },

    #[error("domain margin exhausted: {0}")]
    MarginExhausted(String),

    #[error("cutoff support violates the domain margin: {0}")]
    SupportViolation(String),

    #[error("unknown field system `{0}`")]
    UnknownSystem(String),

    #[error("no feasible path found within budget (horizon searched up to {max_horizon})")]
    UnreachableWithinBudget { max_horizon: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error for key `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
