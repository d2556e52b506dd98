use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 3, got {0}")]
    InvalidDimension(u32),

    #[error("{function} is undefined at gamma = {pole}")]
    UndefinedAtPole { function: &'static str, pole: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate range: {0}")]
    EmptyRange(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("no admissible parameters on the {0} side")]
    EmptyAdmissible(&'static str),

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("integrand not integrable on the grid: {0}")]
    NonIntegrable(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("outside the branch domain: {0}")]
    BranchDomain(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("function vanishes identically")]
    ZeroFunction,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
