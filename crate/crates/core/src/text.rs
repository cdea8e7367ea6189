//! Text normalization: the shared substrate both the reference and the
//! candidate pass through before any comparison.
//!
//! Folding is deterministic and platform-independent: Unicode canonical
//! composition (NFC), locale-independent lowercasing, end trimming, and
//! collapsing of interior whitespace runs to a single ASCII space.

use unicode_normalization::UnicodeNormalization;

/// Controls applied by [`normalize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Lowercase the text before comparison. Disable to measure how much
    /// of a score gap is explained by letter case alone.
    pub case_fold: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        Self { case_fold: true }
    }
}

/// A string prepared for scoring.
///
/// `folded` is the canonical form every metric operates on; `chars` and
/// `tokens` are derived views of it. Character counts include spaces, so
/// `"cat with a hat"` has length 14.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    original: String,
    folded: String,
    chars: Vec<char>,
    tokens: Vec<String>,
}

impl NormalizedText {
    /// The raw input, untouched.
    pub fn original(&self) -> &str {
        &self.original
    }

    /// The folded form: NFC, lowercased (unless disabled), single-spaced.
    pub fn folded(&self) -> &str {
        &self.folded
    }

    /// Characters of the folded form, spaces included.
    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// Whitespace-split terms of the folded form. Punctuation stays attached,
    /// so `"sunday!"` is a single term.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Character count of the folded form, spaces included.
    pub fn char_len(&self) -> usize {
        self.chars.len()
    }

    /// True when nothing survives folding (empty or all-whitespace input).
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

/// Normalize with default options (case folding on).
pub fn normalize(raw: &str) -> NormalizedText {
    normalize_with(raw, NormalizeOptions::default())
}

/// Normalize `raw` into its comparison form.
///
/// Idempotent: normalizing an already-folded string reproduces it. The
/// tokens joined by single spaces always reproduce the folded string.
pub fn normalize_with(raw: &str, options: NormalizeOptions) -> NormalizedText {
    let composed: String = raw.nfc().collect();
    let cased = if options.case_fold {
        composed.to_lowercase()
    } else {
        composed
    };
    // Lowercasing can in principle denormalize; recompose before splitting.
    let recomposed: String = cased.nfc().collect();

    let tokens: Vec<String> = recomposed
        .split_whitespace()
        .map(|t| t.to_owned())
        .collect();
    let folded = tokens.join(" ");
    let chars: Vec<char> = folded.chars().collect();

    NormalizedText {
        original: raw.to_owned(),
        folded,
        chars,
        tokens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_case_and_whitespace() {
        let t = normalize("  Sale   ends SUNDAY! ");
        assert_eq!(t.folded(), "sale ends sunday!");
        assert_eq!(t.tokens(), ["sale", "ends", "sunday!"]);
        assert_eq!(t.char_len(), 17);
    }

    #[test]
    fn already_folded_passes_through() {
        let t = normalize("the");
        assert_eq!(t.folded(), "the");
        assert_eq!(t.char_len(), 3);
    }

    #[test]
    fn long_phrase_folds_to_lowercase() {
        let t = normalize("Neural Information Processing Systems");
        assert_eq!(t.folded(), "neural information processing systems");
    }

    #[test]
    fn idempotent_on_own_output() {
        let once = normalize("  Mixed   CASE  text ");
        let twice = normalize(once.folded());
        assert_eq!(once.folded(), twice.folded());
        assert_eq!(once.tokens(), twice.tokens());
    }

    #[test]
    fn empty_and_whitespace_only_fold_to_empty() {
        assert!(normalize("").is_empty());
        assert!(normalize(" \t\n ").is_empty());
        assert_eq!(normalize("   ").char_len(), 0);
    }

    #[test]
    fn tokens_rejoin_to_folded() {
        let t = normalize("a  b\tc\nd");
        assert_eq!(t.tokens().join(" "), t.folded());
        assert!(t.tokens().iter().all(|tok| !tok.is_empty()));
    }

    #[test]
    fn case_fold_can_be_disabled() {
        let t = normalize_with("Game  On", NormalizeOptions { case_fold: false });
        assert_eq!(t.folded(), "Game On");
        let folded = normalize_with("Game  On", NormalizeOptions::default());
        assert_eq!(folded.folded(), "game on");
    }

    #[test]
    fn composes_to_nfc() {
        // "e" + combining acute composes to the precomposed letter.
        let t = normalize("Cafe\u{0301}");
        assert_eq!(t.folded(), "caf\u{e9}");
        assert_eq!(t.char_len(), 4);
    }
}
