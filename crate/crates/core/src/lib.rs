//! Scoring engine for text rendered inside AI-generated images.
//!
//! Given a reference string (what the prompt demanded) and OCR transcripts
//! of what the model actually drew, this crate computes a composite
//! fidelity score per transcript and averages it per reference:
//!
//! - character precision over space-padded, truncated candidates,
//! - a cosine-similarity gate that forgives creative word rearrangement,
//! - an exponential brevity adjustment that punishes over-generation,
//! - the per-reference mean of the per-candidate finals.
//!
//! On top of the pure metric sit transcript ingestion ([`transcripts`]),
//! batch evaluation plus regression analysis ([`analysis`]), and report
//! emission in JSON, CSV, and SVG.

pub mod analysis;
pub mod brevity;
pub mod error;
pub mod precision;
pub mod score;
pub mod text;
pub mod transcripts;
pub mod vector;

pub use brevity::brevity_adjustment;
pub use error::MetricError;
pub use precision::{char_precision, pad_candidate};
pub use score::{
    aggregate_score, score_candidate, AggregateScore, Branch, ScoreBreakdown, DEFAULT_THRESHOLD,
};
pub use text::{normalize, normalize_with, NormalizeOptions, NormalizedText};
pub use vector::{cosine_similarity, tf_vectors, TermVector};
