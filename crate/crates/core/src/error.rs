use thiserror::Error;

/// Errors shared by every analysis in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ambient rank {rank} exceeds the supported limit of {limit}")]
    UnsupportedRank { rank: usize, limit: usize },

    #[error("Weyl orbit exceeds the cap of {cap} elements")]
    OrbitTooLarge { cap: usize },

    #[error("representation of dimension {dim} exceeds the cap of {cap}")]
    RepresentationTooLarge { dim: u128, cap: u128 },

    #[error("not a height algebra: {0}")]
    NotAHeightAlgebra(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
