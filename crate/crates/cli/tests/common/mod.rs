//! Shared helpers for the end-to-end tests: the binary under test, the
//! benchmark word lists, and the independently written brute-force scorer
//! used to verify fixtures.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

pub fn abhinaw() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abhinaw"))
}

pub fn run(args: &[&str]) -> Output {
    abhinaw().args(args).output().expect("binary runs")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

pub fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

pub fn write_file(path: &Path, contents: &str) {
    std::fs::write(path, contents).expect("write test file");
}

/// The ten known (dictionary) and ten unknown (random-string) reference
/// words of the length study, lengths 1 through 10.
pub const KNOWN_WORDS: [&str; 10] = [
    "i",
    "at",
    "the",
    "Line",
    "Fruit",
    "Tables",
    "hundred",
    "thousand",
    "Knowledge",
    "basketball",
];
pub const UNKNOWN_WORDS: [&str; 10] = [
    "v",
    "zl",
    "hua",
    "sfbj",
    "fzrsw",
    "miwwee",
    "ymbkgrc",
    "hfmhluxh",
    "abllcvisx",
    "csudcatayv",
];

/// Automated per-length means to reproduce, known then unknown columns.
pub const AUTOMATED_KNOWN: [f64; 10] = [0.94, 0.99, 1.0, 0.98, 0.93, 0.92, 0.83, 0.65, 0.77, 0.79];
pub const AUTOMATED_UNKNOWN: [f64; 10] =
    [1.0, 0.86, 0.99, 0.76, 0.99, 0.97, 0.31, 0.48, 0.31, 0.34];

/// Manual per-length means, known then unknown columns.
pub const MANUAL_KNOWN: [f64; 10] = [0.86, 1.0, 1.0, 0.96, 0.91, 1.0, 0.83, 0.63, 0.75, 0.01];
pub const MANUAL_UNKNOWN: [f64; 10] = [1.0, 0.85, 1.0, 0.8, 0.91, 0.97, 0.32, 0.42, 0.18, 0.37];

/// A same-length candidate guaranteed to score zero against `word`:
/// a repeated letter that does not occur in the folded word.
pub fn zero_candidate(word: &str) -> String {
    let folded = word.to_lowercase();
    let filler = ['z', 'q', 'j', 'x', 'v', 'w', 'p', 'y']
        .into_iter()
        .find(|c| !folded.contains(*c))
        .expect("some filler letter is unused");
    filler.to_string().repeat(folded.chars().count())
}

/// Independent brute-force scorer, written from the definitions: folding,
/// padded character precision, term-count cosine, piecewise brevity, gate.
/// Shares no code with the library.
pub fn oracle_final(reference: &str, candidate: &str) -> f64 {
    fn fold(s: &str) -> String {
        s.to_lowercase()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ")
    }
    let r: Vec<char> = fold(reference).chars().collect();
    let c: Vec<char> = fold(candidate).chars().collect();
    let n = r.len();
    let m = c.len();
    assert!(n > 0, "oracle requires a non-empty reference");

    let mut matches = 0usize;
    for (i, &rc) in r.iter().enumerate() {
        let cc = if i < m { c[i] } else { ' ' };
        if rc == cc {
            matches += 1;
        }
    }
    let precision = matches as f64 / n as f64;

    let count = |s: &[char]| -> HashMap<String, u64> {
        let text: String = s.iter().collect();
        let mut counts = HashMap::new();
        for token in text.split_whitespace() {
            *counts.entry(token.to_owned()).or_insert(0) += 1;
        }
        counts
    };
    let rc = count(&r);
    let cc = count(&c);
    let dot: f64 = rc
        .iter()
        .map(|(term, &a)| a as f64 * *cc.get(term).unwrap_or(&0) as f64)
        .sum();
    let norm = |counts: &HashMap<String, u64>| -> f64 {
        counts.values().map(|&v| (v * v) as f64).sum::<f64>().sqrt()
    };
    let cosine = if rc.is_empty() || cc.is_empty() || norm(&rc) == 0.0 || norm(&cc) == 0.0 {
        0.0
    } else {
        dot / (norm(&rc) * norm(&cc))
    };

    let brevity = if m < n {
        1.0
    } else {
        (1.0 - m as f64 / n as f64).exp()
    };

    let gated = if cosine > 0.9 { cosine } else { precision };
    gated * brevity
}
