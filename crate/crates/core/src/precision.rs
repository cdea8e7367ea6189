//! Position-by-position character precision.
//!
//! Each reference position scores 1 when the candidate has the identical
//! character there and 0 otherwise; spaces count as characters. A short
//! candidate is padded with spaces, a long one is truncated to the
//! reference length (the surplus is the brevity adjustment's job).

use crate::error::MetricError;
use crate::text::NormalizedText;

/// Align `candidate` to exactly `ref_len` characters: its first `ref_len`
/// characters, space-filled beyond its own length.
pub fn pad_candidate(candidate: &NormalizedText, ref_len: usize) -> Vec<char> {
    let mut padded: Vec<char> = candidate.chars().iter().take(ref_len).copied().collect();
    padded.resize(ref_len, ' ');
    padded
}

/// Fraction of reference positions whose characters match the aligned
/// candidate, in `[0, 1]`.
pub fn char_precision(
    reference: &NormalizedText,
    candidate: &NormalizedText,
) -> Result<f64, MetricError> {
    let n = reference.char_len();
    if n == 0 {
        return Err(MetricError::EmptyReference);
    }

    let aligned = pad_candidate(candidate, n);
    let matches = reference
        .chars()
        .iter()
        .zip(&aligned)
        .filter(|(r, c)| r == c)
        .count();

    Ok(matches as f64 / n as f64)
}
