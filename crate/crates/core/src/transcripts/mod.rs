//! Transcript ingestion: reference sets and OCR readings stored as CSV.
//!
//! One dataset follows the collection protocol of the benchmark: several
//! generated images per reference text, each image transcribed several
//! times, every reading one row. Loading is strict — every data row becomes
//! exactly one record or one typed, row-numbered error.

mod ocr;

pub use ocr::{
    fetch_transcripts, FetchOptions, FetchOutcome, FixtureBackend, HttpOcrBackend, HttpOcrConfig,
    ImageSource, OcrBackend, OcrError, RetryPolicy, TranscriptionFailure, OCR_KEY_ENV,
};

use std::collections::HashSet;
use std::fmt;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::text::normalize;

/// Errors raised while loading or validating CSV datasets.
#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("row {row}: malformed CSV: {detail}")]
    MalformedCsv { row: u64, detail: String },

    #[error("row {row}: reference text for '{reference_id}' is empty")]
    EmptyReferenceText { row: u64, reference_id: String },

    #[error("row {row}: duplicate reference id '{reference_id}'")]
    DuplicateReferenceId { row: u64, reference_id: String },

    #[error("row {row}: unknown reference id '{reference_id}'")]
    UnknownReferenceId { row: u64, reference_id: String },

    #[error(
        "row {row}: duplicate transcript key ({reference_id}, image {image_index}, repetition {repetition_index})"
    )]
    DuplicateKey {
        row: u64,
        reference_id: String,
        image_index: u32,
        repetition_index: u32,
    },

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// Which word list a reference belongs to in the length-vs-accuracy study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    /// Dictionary words.
    Known,
    /// Random character strings of matched lengths.
    Unknown,
    /// Anything else.
    Other,
}

impl Category {
    pub fn parse(value: &str) -> Category {
        match value.trim().to_ascii_lowercase().as_str() {
            "known" => Category::Known,
            "unknown" => Category::Unknown,
            _ => Category::Other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Known => "known",
            Category::Unknown => "unknown",
            Category::Other => "other",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One reference text the generated images were supposed to contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceEntry {
    pub reference_id: String,
    pub reference_text: String,
    pub category: Category,
    /// Folded character count, computed at load — never read from the file.
    pub text_length: usize,
}

/// One OCR reading of one generated image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptRecord {
    pub reference_id: String,
    pub image_index: u32,
    pub repetition_index: u32,
    /// Raw transcript; empty means the OCR succeeded and saw no text.
    pub text: String,
}

const REFERENCES_HEADER: [&str; 3] = ["reference_id", "reference_text", "category"];
const TRANSCRIPTS_HEADER: [&str; 4] = ["reference_id", "image_index", "repetition_index", "text"];

fn open_reader(path: &Path) -> Result<csv::Reader<std::fs::File>, TranscriptError> {
    let file = std::fs::File::open(path)?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(file))
}

fn check_header(
    reader: &mut csv::Reader<std::fs::File>,
    expected: &[&str],
) -> Result<(), TranscriptError> {
    let headers = reader
        .headers()
        .map_err(|e| TranscriptError::MalformedCsv {
            row: 1,
            detail: e.to_string(),
        })?;
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(TranscriptError::MalformedCsv {
            row: 1,
            detail: format!(
                "expected header '{}', found '{}'",
                expected.join(","),
                got.join(",")
            ),
        });
    }
    Ok(())
}

/// The 1-based file row a record starts on (header is row 1).
fn record_row(record: &csv::StringRecord, fallback_index: u64) -> u64 {
    record
        .position()
        .map(|p| p.line())
        .unwrap_or(fallback_index + 2)
}

fn csv_error_row(err: &csv::Error, fallback: u64) -> u64 {
    match err.position() {
        Some(p) => p.line(),
        None => fallback,
    }
}

/// Load the reference set: header `reference_id,reference_text,category`.
pub fn load_references(path: &Path) -> Result<Vec<ReferenceEntry>, TranscriptError> {
    let mut reader = open_reader(path)?;
    check_header(&mut reader, &REFERENCES_HEADER)?;

    let mut entries = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();

    for (i, result) in reader.records().enumerate() {
        let record = result.map_err(|e| TranscriptError::MalformedCsv {
            row: csv_error_row(&e, i as u64 + 2),
            detail: e.to_string(),
        })?;
        let row = record_row(&record, i as u64);

        let reference_id = record[0].to_owned();
        let reference_text = record[1].to_owned();
        let category = Category::parse(&record[2]);

        if reference_id.trim().is_empty() {
            return Err(TranscriptError::MalformedCsv {
                row,
                detail: "reference_id is empty".to_owned(),
            });
        }
        let folded = normalize(&reference_text);
        if folded.is_empty() {
            return Err(TranscriptError::EmptyReferenceText { row, reference_id });
        }
        if !seen.insert(reference_id.clone()) {
            return Err(TranscriptError::DuplicateReferenceId { row, reference_id });
        }

        entries.push(ReferenceEntry {
            reference_id,
            reference_text,
            category,
            text_length: folded.char_len(),
        });
    }

    Ok(entries)
}

/// Load transcripts: header `reference_id,image_index,repetition_index,text`.
///
/// Records come back in file order. Duplicate
/// (reference_id, image_index, repetition_index) keys are rejected.
pub fn load_transcripts(path: &Path) -> Result<Vec<TranscriptRecord>, TranscriptError> {
    let mut reader = open_reader(path)?;
    check_header(&mut reader, &TRANSCRIPTS_HEADER)?;

    let mut records = Vec::new();
    let mut seen: HashSet<(String, u32, u32)> = HashSet::new();

    for (i, result) in reader.records().enumerate() {
        let record = result.map_err(|e| TranscriptError::MalformedCsv {
            row: csv_error_row(&e, i as u64 + 2),
            detail: e.to_string(),
        })?;
        let row = record_row(&record, i as u64);

        let reference_id = record[0].to_owned();
        let image_index = parse_index(&record[1], "image_index", row)?;
        let repetition_index = parse_index(&record[2], "repetition_index", row)?;
        let text = record[3].to_owned();

        if reference_id.trim().is_empty() {
            return Err(TranscriptError::MalformedCsv {
                row,
                detail: "reference_id is empty".to_owned(),
            });
        }
        let key = (reference_id.clone(), image_index, repetition_index);
        if !seen.insert(key) {
            return Err(TranscriptError::DuplicateKey {
                row,
                reference_id,
                image_index,
                repetition_index,
            });
        }

        records.push(TranscriptRecord {
            reference_id,
            image_index,
            repetition_index,
            text,
        });
    }

    Ok(records)
}

fn parse_index(value: &str, field: &str, row: u64) -> Result<u32, TranscriptError> {
    let parsed: u32 = value
        .trim()
        .parse()
        .map_err(|_| TranscriptError::MalformedCsv {
            row,
            detail: format!("{field} '{value}' is not a non-negative integer"),
        })?;
    if parsed == 0 {
        return Err(TranscriptError::MalformedCsv {
            row,
            detail: format!("{field} must be >= 1"),
        });
    }
    Ok(parsed)
}

/// Cross-check every transcript's reference id against a reference set.
///
/// The reported row assumes `records` are in file order, as returned by
/// [`load_transcripts`].
pub fn check_reference_ids(
    records: &[TranscriptRecord],
    references: &[ReferenceEntry],
) -> Result<(), TranscriptError> {
    let known: HashSet<&str> = references.iter().map(|r| r.reference_id.as_str()).collect();
    for (i, record) in records.iter().enumerate() {
        if !known.contains(record.reference_id.as_str()) {
            return Err(TranscriptError::UnknownReferenceId {
                row: i as u64 + 2,
                reference_id: record.reference_id.clone(),
            });
        }
    }
    Ok(())
}

/// Write transcripts in the same CSV dialect [`load_transcripts`] reads.
pub fn write_transcripts<W: io::Write>(
    writer: W,
    records: &[TranscriptRecord],
) -> Result<(), TranscriptError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(TRANSCRIPTS_HEADER).map_err(io_from_csv)?;
    for record in records {
        out.write_record([
            record.reference_id.as_str(),
            &record.image_index.to_string(),
            &record.repetition_index.to_string(),
            record.text.as_str(),
        ])
        .map_err(io_from_csv)?;
    }
    out.flush()?;
    Ok(())
}

/// Write a reference set in the CSV dialect [`load_references`] reads.
pub fn write_references<W: io::Write>(
    writer: W,
    references: &[ReferenceEntry],
) -> Result<(), TranscriptError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(REFERENCES_HEADER).map_err(io_from_csv)?;
    for entry in references {
        out.write_record([
            entry.reference_id.as_str(),
            entry.reference_text.as_str(),
            entry.category.as_str(),
        ])
        .map_err(io_from_csv)?;
    }
    out.flush()?;
    Ok(())
}

fn io_from_csv(err: csv::Error) -> TranscriptError {
    TranscriptError::Io(io::Error::other(err))
}
