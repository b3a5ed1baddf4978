use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("resource limit exceeded: {what} = {actual} (limit {limit})")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("column transform was not tracked for this decomposition")]
    MissingColumnTransform,
}

pub type Result<T> = std::result::Result<T, LinalgError>;
