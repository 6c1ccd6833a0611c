use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    /// A parameter violated its domain. `constraint` names the violated
    /// condition, e.g. `"0 < xi < eta < pi/4"`.
    #[error("domain violation: {constraint} (got {value})")]
    Domain { constraint: &'static str, value: f64 },

    #[error("party count must be at least 2, got {0}")]
    PartyCount(usize),

    #[error("unknown step mode '{0}' (expected 'capped' or 'nearest')")]
    UnknownMode(alloc::string::String),

    #[error("trial count must be at least 1")]
    NoTrials,
}

impl Error {
    pub(crate) fn domain(constraint: &'static str, value: f64) -> Self {
        Error::Domain { constraint, value }
    }
}
