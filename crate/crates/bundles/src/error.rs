use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Algebra(#[from] pdc_algebra::Error),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("no adapted basis: {0}")]
    NoAdaptedBasis(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, BundleError>;
