//! Pluggable OCR backends and the repetition-loop fetcher.
//!
//! Two backends ship: a deterministic fixture backend driven by a JSON
//! script (what every test uses) and a generic HTTP vision backend that
//! posts image bytes and reads the transcript back as text. Failed reads
//! are recorded as typed failures, never as empty candidates — an empty
//! transcript means the OCR succeeded and saw no text.

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use super::TranscriptRecord;

/// Environment variable holding the HTTP backend credential.
pub const OCR_KEY_ENV: &str = "ABHINAW_OCR_KEY";

/// Errors from OCR backends.
///
/// `AuthMissing` and `BackendUnavailable` abort a fetch; `CallFailed` is
/// retried per policy and then recorded against its (image, repetition).
#[derive(Debug, Error)]
pub enum OcrError {
    #[error("OCR credential missing: set {variable}")]
    AuthMissing { variable: String },

    #[error("OCR backend unavailable: {detail}")]
    BackendUnavailable { detail: String },

    #[error("transcription call failed: {detail}")]
    CallFailed { detail: String },
}

/// One image handed to a backend.
#[derive(Debug, Clone)]
pub struct ImageSource {
    /// File name (fixture backends key their scripts on it).
    pub name: String,
    pub bytes: Vec<u8>,
}

/// A transcription capability.
///
/// `transcribe` must be side-effect-free with respect to the dataset and
/// deterministic per (image, repetition) so repeated runs tabulate
/// identical transcripts.
pub trait OcrBackend: Send + Sync {
    fn transcribe(&self, image: &ImageSource, repetition: u32) -> Result<String, OcrError>;
}

/// Retry budget applied to each transcription call.
#[derive(Debug, Clone, Copy)]
pub struct RetryPolicy {
    /// Total attempts per call, including the first.
    pub max_attempts: u32,
    /// Pause between attempts.
    pub backoff: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_attempts: 3,
            backoff: Duration::from_millis(250),
        }
    }
}

/// Parameters for one fetch run.
#[derive(Debug, Clone)]
pub struct FetchOptions {
    /// Reference id stamped on every produced record.
    pub reference_id: String,
    /// OCR readings per image; the collection protocol uses 10.
    pub repetitions: u32,
    /// Concurrent backend calls (at least 1).
    pub parallelism: usize,
    pub retry: RetryPolicy,
}

/// A call that stayed failed after its retry budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptionFailure {
    pub image_index: u32,
    pub repetition_index: u32,
    pub attempts: u32,
    pub detail: String,
}

/// Everything a fetch produced: successful records plus explicit failures.
///
/// `records.len() + failures.len()` always equals images x repetitions.
#[derive(Debug, Default)]
pub struct FetchOutcome {
    /// Ordered by (image_index, repetition_index) regardless of the order
    /// calls completed in.
    pub records: Vec<TranscriptRecord>,
    pub failures: Vec<TranscriptionFailure>,
}

/// Transcribe every image `repetitions` times through `backend`.
///
/// Calls may run concurrently up to `options.parallelism`; output order is
/// deterministic either way. Returns an error only for fatal backend
/// conditions (missing credential, unreachable endpoint).
pub fn fetch_transcripts(
    backend: &dyn OcrBackend,
    images: &[ImageSource],
    options: &FetchOptions,
) -> Result<FetchOutcome, OcrError> {
    assert!(options.repetitions >= 1, "repetitions must be >= 1");

    let tasks: Vec<(u32, u32)> = (1..=images.len() as u32)
        .flat_map(|image| (1..=options.repetitions).map(move |rep| (image, rep)))
        .collect();

    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let fatal: Mutex<Option<OcrError>> = Mutex::new(None);
    let results: Mutex<Vec<Option<Result<String, TranscriptionFailure>>>> =
        Mutex::new(vec![None; tasks.len()]);

    let workers = options.parallelism.max(1).min(tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    return;
                }
                let (image_index, repetition_index) = tasks[i];
                let image = &images[image_index as usize - 1];

                match call_with_retries(backend, image, repetition_index, &options.retry) {
                    CallOutcome::Ok(text) => {
                        results.lock().unwrap()[i] = Some(Ok(text));
                    }
                    CallOutcome::Failed { attempts, detail } => {
                        results.lock().unwrap()[i] = Some(Err(TranscriptionFailure {
                            image_index,
                            repetition_index,
                            attempts,
                            detail,
                        }));
                    }
                    CallOutcome::Fatal(err) => {
                        stop.store(true, Ordering::Relaxed);
                        fatal.lock().unwrap().get_or_insert(err);
                        return;
                    }
                }
            });
        }
    });

    if let Some(err) = fatal.into_inner().unwrap() {
        return Err(err);
    }

    let mut outcome = FetchOutcome::default();
    let results = results.into_inner().unwrap();
    for ((image_index, repetition_index), slot) in tasks.into_iter().zip(results) {
        match slot.expect("every task ran") {
            Ok(text) => outcome.records.push(TranscriptRecord {
                reference_id: options.reference_id.clone(),
                image_index,
                repetition_index,
                text,
            }),
            Err(failure) => outcome.failures.push(failure),
        }
    }
    Ok(outcome)
}

enum CallOutcome {
    Ok(String),
    Failed { attempts: u32, detail: String },
    Fatal(OcrError),
}

fn call_with_retries(
    backend: &dyn OcrBackend,
    image: &ImageSource,
    repetition: u32,
    retry: &RetryPolicy,
) -> CallOutcome {
    let budget = retry.max_attempts.max(1);
    let mut last_detail = String::new();
    for attempt in 1..=budget {
        match backend.transcribe(image, repetition) {
            Ok(text) => return CallOutcome::Ok(text),
            Err(OcrError::CallFailed { detail }) => {
                last_detail = detail;
                if attempt < budget && !retry.backoff.is_zero() {
                    std::thread::sleep(retry.backoff);
                }
            }
            Err(fatal) => return CallOutcome::Fatal(fatal),
        }
    }
    CallOutcome::Failed {
        attempts: budget,
        detail: last_detail,
    }
}

/// What the fixture script says one image should transcribe to.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ScriptEntry {
    /// Same transcript on every repetition.
    Text(String),
    /// One transcript per repetition, cycled when repetitions exceed it.
    Cycle(Vec<String>),
    /// Fail the first `fail_first` attempts of every call, then succeed.
    Flaky { text: String, fail_first: u32 },
}

/// Deterministic backend scripted by a JSON file.
///
/// The script maps image file names to entries; `null` means every call
/// for that image fails. Unlisted images also fail, with a distinct
/// message.
#[derive(Debug)]
pub struct FixtureBackend {
    script: HashMap<String, Option<ScriptEntry>>,
    attempt_counts: Mutex<HashMap<(String, u32), u32>>,
}

impl FixtureBackend {
    pub fn from_script_path(path: &Path) -> Result<Self, OcrError> {
        let raw = std::fs::read_to_string(path).map_err(|e| OcrError::BackendUnavailable {
            detail: format!("cannot read fixture script {}: {e}", path.display()),
        })?;
        Self::from_script_json(&raw)
    }

    pub fn from_script_json(json: &str) -> Result<Self, OcrError> {
        let script: HashMap<String, Option<ScriptEntry>> =
            serde_json::from_str(json).map_err(|e| OcrError::BackendUnavailable {
                detail: format!("invalid fixture script: {e}"),
            })?;
        Ok(Self {
            script,
            attempt_counts: Mutex::new(HashMap::new()),
        })
    }
}

impl OcrBackend for FixtureBackend {
    fn transcribe(&self, image: &ImageSource, repetition: u32) -> Result<String, OcrError> {
        match self.script.get(&image.name) {
            None => Err(OcrError::CallFailed {
                detail: format!("no script entry for image '{}'", image.name),
            }),
            Some(None) => Err(OcrError::CallFailed {
                detail: format!("scripted failure for image '{}'", image.name),
            }),
            Some(Some(ScriptEntry::Text(text))) => Ok(text.clone()),
            Some(Some(ScriptEntry::Cycle(texts))) => {
                let i = (repetition as usize - 1) % texts.len().max(1);
                texts.get(i).cloned().ok_or_else(|| OcrError::CallFailed {
                    detail: format!("empty cycle for image '{}'", image.name),
                })
            }
            Some(Some(ScriptEntry::Flaky { text, fail_first })) => {
                let mut counts = self.attempt_counts.lock().unwrap();
                let attempt = counts.entry((image.name.clone(), repetition)).or_insert(0);
                *attempt += 1;
                if *attempt <= *fail_first {
                    Err(OcrError::CallFailed {
                        detail: format!(
                            "scripted transient failure {attempt}/{fail_first} for '{}'",
                            image.name
                        ),
                    })
                } else {
                    Ok(text.clone())
                }
            }
        }
    }
}

/// Connection settings for the HTTP vision backend.
#[derive(Debug, Clone, Deserialize)]
pub struct HttpOcrConfig {
    pub endpoint: String,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: u64,
}

fn default_timeout_secs() -> u64 {
    30
}

/// Generic HTTP vision backend: POSTs the image bytes with a bearer token
/// and expects the transcript as the UTF-8 response body.
///
/// Connection-level failures are fatal (`BackendUnavailable`); HTTP error
/// statuses are per-call failures eligible for retry.
#[derive(Debug)]
pub struct HttpOcrBackend {
    agent: ureq::Agent,
    endpoint: String,
    api_key: String,
}

impl HttpOcrBackend {
    /// Build with the credential taken from [`OCR_KEY_ENV`].
    pub fn from_env(config: &HttpOcrConfig) -> Result<Self, OcrError> {
        let api_key = std::env::var(OCR_KEY_ENV).map_err(|_| OcrError::AuthMissing {
            variable: OCR_KEY_ENV.to_owned(),
        })?;
        Ok(Self::with_key(config, &api_key))
    }

    pub fn with_key(config: &HttpOcrConfig, api_key: &str) -> Self {
        let agent = ureq::AgentBuilder::new()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build();
        Self {
            agent,
            endpoint: config.endpoint.clone(),
            api_key: api_key.to_owned(),
        }
    }
}

impl OcrBackend for HttpOcrBackend {
    fn transcribe(&self, image: &ImageSource, _repetition: u32) -> Result<String, OcrError> {
        let response = self
            .agent
            .post(&self.endpoint)
            .set("Authorization", &format!("Bearer {}", self.api_key))
            .set("Content-Type", "application/octet-stream")
            .send_bytes(&image.bytes);

        match response {
            Ok(resp) => resp.into_string().map_err(|e| OcrError::CallFailed {
                detail: format!("unreadable response body: {e}"),
            }),
            Err(ureq::Error::Status(code, _)) => Err(OcrError::CallFailed {
                detail: format!("HTTP status {code}"),
            }),
            Err(ureq::Error::Transport(t)) => Err(OcrError::BackendUnavailable {
                detail: t.to_string(),
            }),
        }
    }
}
