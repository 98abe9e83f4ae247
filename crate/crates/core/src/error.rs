use thiserror::Error;

use crate::coeff::CoeffError;
use crate::quiver::QuiverError;
use crate::repcat::RepError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("product needs total dimension {needed} but the catalog stops at {bound}")]
    Truncation { needed: u32, bound: u32 },
    #[error("label with half-integral K-class {0} is not allowed here")]
    HalfIntegral(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("configuration: {0}")]
    Config(String),
}

impl Error {
    /// Cap and configuration problems, as opposed to identity failures.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Quiver(_)
                | Error::Coeff(CoeffError::NotPrime(_))
                | Error::Rep(RepError::CapExceeded { .. })
                | Error::Truncation { .. }
                | Error::Precondition(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
