//! The crate-wide error type and its exit codes.

use thiserror::Error;

use crate::chain::ChainError;
use crate::enumeration::{EnumerationError, LinalgError};
use crate::graph::GraphError;
use crate::json::JsonError;
use crate::morita::MoritaError;
use crate::symplectic::SymplecticError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
}

impl Error {
    /// 2 for bad input, 3 for resource caps, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Enumeration(EnumerationError::ResourceCap { .. })
            | Error::Symplectic(SymplecticError::ResourceCap { .. }) => 3,
            Error::Enumeration(EnumerationError::Internal(_)) | Error::Enumeration(EnumerationError::Cache(_)) => 1,
            Error::Io(..) => 1,
            _ => 2,
        }
    }
}
