use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A denominator came within the near-pole threshold of zero. Samplers
    /// treat this as "draw again" rather than as an identity failure.
    #[error("near pole in {what} (|denominator| = {magnitude:e})")]
    NearPole { what: String, magnitude: f64 },

    /// A sum cancelled so far that double precision cannot resolve it to the
    /// requested tolerance (`condition = Σ|terms| / |value|`).
    #[error("ill-conditioned {what} (condition number {condition:e})")]
    IllConditioned { what: String, condition: f64 },

    #[error("pole in shifted factorial: factor at index {index} vanishes")]
    Pole { index: i64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(String),

    #[error("parse error at index {position}: unexpected {found:?}")]
    Parse { position: usize, found: char },

    #[error("weight table has no entry for ({0}, {1})")]
    TableMiss(i64, i64),

    #[error("generic weights are symbolic and cannot be evaluated numerically")]
    Symbolic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown identity id {0:?}")]
    UnknownId(String),

    #[error("{id}: only {admissible} of {total} parameter draws were admissible")]
    ResampleCap {
        id: String,
        admissible: usize,
        total: usize,
    },
}

impl Error {
    /// True for conditioning failures that a sampler may resolve by drawing
    /// fresh parameters.
    pub fn is_resampleable(&self) -> bool {
        matches!(self, Error::NearPole { .. } | Error::Pole { .. } | Error::IllConditioned { .. })
    }
}
