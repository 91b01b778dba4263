use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("order guard exceeded: more than {0} elements")]
    GuardExceeded(usize),
    #[error("stage mismatch: expected stage {expected}, got {got}")]
    StageMismatch { expected: usize, got: usize },
    #[error("stage {stage} is beyond the system's range (max {max})")]
    StageOutOfRange { stage: usize, max: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no stable stage within j_max = {0}")]
    Exhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
