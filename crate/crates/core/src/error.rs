use exstat_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("expression is not closed")]
    NotClosed,
    #[error("expression has a nonzero free coordinate; it is not a finite-order element")]
    FreeCoordinate,
    #[error("no integer solution: {0}")]
    NoSolution(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Linalg(LinalgError),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ResourceLimit(_) | Error::Linalg(LinalgError::ResourceLimit { .. })
        )
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Linalg(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
