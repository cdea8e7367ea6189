//! The conditional score and its aggregate.
//!
//! Per candidate: compute character precision, term-frequency cosine, and
//! the brevity adjustment; when the cosine clears the threshold the word
//! arrangement is forgiven and the cosine replaces precision. The aggregate
//! over all candidates for one reference is a plain arithmetic mean.

use crate::brevity::brevity_adjustment;
use crate::error::MetricError;
use crate::precision::char_precision;
use crate::text::NormalizedText;
use crate::vector::{cosine_similarity, tf_vectors};

/// Cosine gate threshold used when the caller does not override it.
pub const DEFAULT_THRESHOLD: f64 = 0.9;

/// Which factor was multiplied by the brevity adjustment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Cosine similarity exceeded the threshold (strictly).
    Cosine,
    /// Cosine at or below the threshold; character precision used.
    Precision,
}

impl Branch {
    /// Stable lowercase name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Cosine => "cosine",
            Branch::Precision => "precision",
        }
    }
}

/// All intermediate values behind one candidate's final score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBreakdown {
    /// Character precision P, in `[0, 1]`.
    pub precision: f64,
    /// Term-frequency cosine similarity CS, in `[0, 1]`.
    pub cosine: f64,
    /// Brevity adjustment BA, in `(0, 1]`.
    pub brevity: f64,
    /// Reference length n: folded characters, spaces included.
    pub ref_len: usize,
    /// Candidate length m: folded characters, spaces included.
    pub cand_len: usize,
    /// Which factor the gate selected.
    pub branch: Branch,
    /// Final score S = (CS or P) x BA, in `[0, 1]`.
    pub final_score: f64,
}

/// Per-reference aggregate over every scored candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateScore {
    /// Per-candidate breakdowns, in input order.
    pub per_candidate: Vec<ScoreBreakdown>,
    /// Arithmetic mean of the final scores, in `[0, 1]`.
    pub mean: f64,
}

impl AggregateScore {
    /// Candidate count k.
    pub fn k(&self) -> usize {
        self.per_candidate.len()
    }
}

/// Score one candidate against the reference.
///
/// The gate is strict: the cosine branch is taken only when `CS > threshold`;
/// a cosine exactly at the threshold falls back to precision.
pub fn score_candidate(
    reference: &NormalizedText,
    candidate: &NormalizedText,
    threshold: f64,
) -> Result<ScoreBreakdown, MetricError> {
    let precision = char_precision(reference, candidate)?;
    let (v_ref, v_cand) = tf_vectors(reference, candidate);
    let cosine = cosine_similarity(&v_ref, &v_cand);
    let brevity = brevity_adjustment(reference.char_len(), candidate.char_len())?;

    let branch = if cosine > threshold {
        Branch::Cosine
    } else {
        Branch::Precision
    };
    let gated = match branch {
        Branch::Cosine => cosine,
        Branch::Precision => precision,
    };

    Ok(ScoreBreakdown {
        precision,
        cosine,
        brevity,
        ref_len: reference.char_len(),
        cand_len: candidate.char_len(),
        branch,
        final_score: gated * brevity,
    })
}

/// Mean of the per-candidate final scores for one reference.
///
/// The mean is summed in a value-sorted order so that permuting the
/// candidate list cannot perturb the result by rounding, then clamped
/// into `[min, max]` of the finals.
pub fn aggregate_score(
    reference: &NormalizedText,
    candidates: &[NormalizedText],
    threshold: f64,
) -> Result<AggregateScore, MetricError> {
    if candidates.is_empty() {
        return Err(MetricError::NoCandidates);
    }

    let per_candidate: Vec<ScoreBreakdown> = candidates
        .iter()
        .map(|c| score_candidate(reference, c, threshold))
        .collect::<Result<_, _>>()?;

    let mut finals: Vec<f64> = per_candidate.iter().map(|b| b.final_score).collect();
    finals.sort_by(f64::total_cmp);
    let sum: f64 = finals.iter().sum();
    let mean = (sum / finals.len() as f64).clamp(finals[0], finals[finals.len() - 1]);

    Ok(AggregateScore {
        per_candidate,
        mean,
    })
}
