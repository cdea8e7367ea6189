//! Shared input generators for the criterion benches.

use abhinaw_core::transcripts::{Category, ReferenceEntry, TranscriptRecord};

/// Deterministic pseudo-random byte stream (xorshift); no seed, no deps.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[(self.next() % items.len() as u64) as usize]
    }
}

const WORDS: &[&str] = &[
    "the",
    "at",
    "line",
    "fruit",
    "tables",
    "hundred",
    "thousand",
    "knowledge",
    "basketball",
    "sale",
    "ends",
    "sunday",
    "celebrate",
    "freedom",
];

/// A phrase of `words` dictionary words.
pub fn phrase(words: usize, seed: u64) -> String {
    let mut rng = Rng::new(seed);
    (0..words)
        .map(|_| *rng.pick(WORDS))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A noisy OCR-style reading of `reference`: occasional substitutions,
/// occasional duplicated trailing word.
pub fn noisy_reading(reference: &str, seed: u64) -> String {
    let mut rng = Rng::new(seed);
    let mut out: String = reference
        .chars()
        .map(|c| {
            if c != ' ' && rng.next().is_multiple_of(12) {
                'z'
            } else {
                c
            }
        })
        .collect();
    if rng.next().is_multiple_of(5) {
        if let Some(last) = reference.split_whitespace().last() {
            out.push(' ');
            out.push_str(last);
        }
    }
    out
}

/// A reference set plus a transcript pool shaped like the collection
/// protocol: `images x repetitions` readings per reference.
pub fn dataset(
    references: usize,
    images: u32,
    repetitions: u32,
) -> (Vec<ReferenceEntry>, Vec<TranscriptRecord>) {
    let mut entries = Vec::with_capacity(references);
    let mut records = Vec::new();
    for i in 0..references {
        let text = phrase(1 + i % 3, i as u64 + 1);
        entries.push(ReferenceEntry {
            reference_id: format!("r{i}"),
            reference_text: text.clone(),
            category: if i % 2 == 0 {
                Category::Known
            } else {
                Category::Unknown
            },
            text_length: text.chars().count(),
        });
        for image in 1..=images {
            for repetition in 1..=repetitions {
                let seed =
                    (i as u64 + 1) * 1_000_003 + u64::from(image) * 101 + u64::from(repetition);
                records.push(TranscriptRecord {
                    reference_id: format!("r{i}"),
                    image_index: image,
                    repetition_index: repetition,
                    text: noisy_reading(&text, seed),
                });
            }
        }
    }
    (entries, records)
}
