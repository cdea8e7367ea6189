use thiserror::Error;

/// Errors from the pure scoring formulas.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    /// The reference text has no characters after normalization. A reference
    /// is user intent and must be non-empty; every formula divides by its length.
    #[error("reference text is empty after normalization")]
    EmptyReference,

    /// An aggregate was requested over zero candidates.
    #[error("candidate list is empty")]
    NoCandidates,
}
