//! Term-frequency vectors and cosine similarity over a shared vocabulary.
//!
//! The cosine of two count vectors ignores word order entirely, which is
//! what lets a creatively rearranged candidate keep its score.

use std::sync::Arc;

use crate::text::NormalizedText;

/// Raw occurrence counts of each vocabulary term in one text.
///
/// Both vectors returned by [`tf_vectors`] are expressed over the same
/// ordered union vocabulary, so positions are directly comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermVector {
    vocabulary: Arc<[String]>,
    counts: Vec<u64>,
}

impl TermVector {
    /// The ordered union vocabulary this vector is expressed over.
    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    /// Counts aligned with [`Self::vocabulary`].
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Occurrence count of one term (0 when absent from the vocabulary).
    pub fn count(&self, term: &str) -> u64 {
        self.vocabulary
            .iter()
            .position(|t| t == term)
            .map_or(0, |i| self.counts[i])
    }

    /// Sum of all counts; equals the token count of the source text.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// True when every count is zero (the source text had no tokens).
    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    fn shares_vocabulary(&self, other: &TermVector) -> bool {
        Arc::ptr_eq(&self.vocabulary, &other.vocabulary) || self.vocabulary == other.vocabulary
    }
}

/// Build term-frequency vectors for two texts over their union vocabulary.
///
/// The vocabulary is ordered by first appearance: all of `a`'s terms in
/// order, then `b`'s terms not already seen. Deterministic for fixed inputs.
pub fn tf_vectors(a: &NormalizedText, b: &NormalizedText) -> (TermVector, TermVector) {
    let mut vocabulary: Vec<String> = Vec::new();
    for token in a.tokens().iter().chain(b.tokens()) {
        if !vocabulary.iter().any(|t| t == token) {
            vocabulary.push(token.clone());
        }
    }
    let vocabulary: Arc<[String]> = vocabulary.into();

    let count_into = |text: &NormalizedText| -> Vec<u64> {
        let mut counts = vec![0u64; vocabulary.len()];
        for token in text.tokens() {
            let i = vocabulary
                .iter()
                .position(|t| t == token)
                .expect("token present in union vocabulary");
            counts[i] += 1;
        }
        counts
    };

    let counts_a = count_into(a);
    let counts_b = count_into(b);
    (
        TermVector {
            vocabulary: Arc::clone(&vocabulary),
            counts: counts_a,
        },
        TermVector {
            vocabulary,
            counts: counts_b,
        },
    )
}

/// Cosine of two count vectors, in `[0, 1]`.
///
/// Counts are non-negative so the cosine cannot go below zero. When either
/// vector is all-zero the formula divides by zero; we define the result as
/// 0, which routes scoring to the precision branch.
pub fn cosine_similarity(a: &TermVector, b: &TermVector) -> f64 {
    assert!(
        a.shares_vocabulary(b),
        "cosine_similarity requires vectors over the same vocabulary"
    );

    if a.is_zero() || b.is_zero() {
        return 0.0;
    }

    let dot: f64 = a
        .counts
        .iter()
        .zip(&b.counts)
        .map(|(&x, &y)| x as f64 * y as f64)
        .sum();
    let norm = |v: &TermVector| -> f64 {
        v.counts
            .iter()
            .map(|&x| (x as f64) * (x as f64))
            .sum::<f64>()
            .sqrt()
    };

    (dot / (norm(a) * norm(b))).clamp(0.0, 1.0)
}
