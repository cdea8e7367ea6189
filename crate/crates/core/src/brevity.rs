//! Brevity adjustment: the multiplicative penalty for over-generated text.
//!
//! This is the inverse concern of BLEU's brevity penalty. BLEU punishes
//! candidates shorter than the reference; here a short candidate already
//! pays through precision, and it is the *longer* candidate that would
//! otherwise go unpunished.

use crate::error::MetricError;

/// Piecewise penalty on candidate length, in `(0, 1]`:
/// 1 when the candidate is no longer than the reference, otherwise
/// `exp(1 - m/n)` for reference length `n` and candidate length `m`.
///
/// Lengths are character counts of the folded texts, spaces included.
/// Both branches give 1 at `m = n`, so the penalty is continuous there.
pub fn brevity_adjustment(ref_len: usize, cand_len: usize) -> Result<f64, MetricError> {
    if ref_len == 0 {
        return Err(MetricError::EmptyReference);
    }
    if cand_len < ref_len {
        return Ok(1.0);
    }
    let exponent = 1.0 - cand_len as f64 / ref_len as f64;
    Ok(exponent.exp().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn redundant_candidate_pays_exponentially() {
        // n = 3, m = 7: exp(1 - 7/3) = exp(-4/3).
        let ba = brevity_adjustment(3, 7).unwrap();
        assert!((ba - 0.2635971381157267).abs() < 1e-12);
        assert!((ba - (-4.0_f64 / 3.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn equal_lengths_are_unpenalized() {
        assert_eq!(brevity_adjustment(5, 5).unwrap(), 1.0);
    }

    #[test]
    fn short_candidates_are_unpenalized() {
        assert_eq!(brevity_adjustment(10, 2).unwrap(), 1.0);
        assert_eq!(brevity_adjustment(3, 0).unwrap(), 1.0);
    }

    #[test]
    fn continuous_at_equal_length() {
        let below = brevity_adjustment(10, 9).unwrap();
        let at = brevity_adjustment(10, 10).unwrap();
        let above = brevity_adjustment(10, 11).unwrap();
        assert_eq!(below, 1.0);
        assert_eq!(at, 1.0);
        assert!(above < 1.0);
        assert!((at - above) < 0.2);
    }

    #[test]
    fn empty_reference_is_an_error() {
        assert_eq!(
            brevity_adjustment(0, 3).unwrap_err(),
            MetricError::EmptyReference
        );
    }
}
