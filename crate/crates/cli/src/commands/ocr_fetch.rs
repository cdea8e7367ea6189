use std::fs::File;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::Context;

use abhinaw_core::transcripts::{
    fetch_transcripts, write_transcripts, FetchOptions, FixtureBackend, HttpOcrBackend,
    HttpOcrConfig, ImageSource, OcrBackend, OcrError, RetryPolicy,
};

use crate::{BackendKind, Failure};

pub struct Args {
    pub images_dir: PathBuf,
    pub reference_id: String,
    pub repetitions: u32,
    pub backend: BackendKind,
    pub script: Option<PathBuf>,
    pub endpoint: Option<String>,
    pub backend_config: Option<PathBuf>,
    pub out: PathBuf,
    pub jobs: usize,
    pub max_attempts: u32,
    pub retry_backoff_ms: u64,
}

pub fn run(args: Args) -> Result<(), Failure> {
    if args.repetitions == 0 {
        return Err(Failure::input(anyhow::anyhow!(
            "--repetitions must be at least 1"
        )));
    }

    let images = load_images(&args.images_dir)?;
    if images.is_empty() {
        return Err(Failure::input(anyhow::anyhow!(
            "no image files found in {}",
            args.images_dir.display()
        )));
    }

    let backend = build_backend(&args)?;
    let options = FetchOptions {
        reference_id: args.reference_id.clone(),
        repetitions: args.repetitions,
        parallelism: args.jobs.max(1),
        retry: RetryPolicy {
            max_attempts: args.max_attempts.max(1),
            backoff: Duration::from_millis(args.retry_backoff_ms),
        },
    };

    let outcome = fetch_transcripts(backend.as_ref(), &images, &options).map_err(fetch_failure)?;

    for failure in &outcome.failures {
        eprintln!(
            "failed: image {} repetition {} after {} attempts: {}",
            failure.image_index, failure.repetition_index, failure.attempts, failure.detail
        );
    }
    if !outcome.failures.is_empty() {
        eprintln!(
            "{} of {} transcriptions failed",
            outcome.failures.len(),
            outcome.records.len() + outcome.failures.len()
        );
    }

    let out = File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))
        .map_err(Failure::input)?;
    write_transcripts(out, &outcome.records).map_err(Failure::input)?;
    println!(
        "wrote {} transcripts for {} images x {} repetitions to {}",
        outcome.records.len(),
        images.len(),
        args.repetitions,
        args.out.display()
    );

    Ok(())
}

fn load_images(dir: &std::path::Path) -> Result<Vec<ImageSource>, Failure> {
    let entries = std::fs::read_dir(dir)
        .with_context(|| format!("reading image directory {}", dir.display()))
        .map_err(Failure::input)?;

    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();

    let mut images = Vec::with_capacity(paths.len());
    for path in paths {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_owned();
        let bytes = std::fs::read(&path)
            .with_context(|| format!("reading image {}", path.display()))
            .map_err(Failure::input)?;
        images.push(ImageSource { name, bytes });
    }
    Ok(images)
}

fn build_backend(args: &Args) -> Result<Box<dyn OcrBackend>, Failure> {
    match args.backend {
        BackendKind::Fixture => {
            let script = args.script.as_ref().ok_or_else(|| {
                Failure::input(anyhow::anyhow!("--backend fixture requires --script"))
            })?;
            let backend = FixtureBackend::from_script_path(script).map_err(fetch_failure)?;
            Ok(Box::new(backend))
        }
        BackendKind::Http => {
            let mut config = match &args.backend_config {
                Some(path) => {
                    let raw = std::fs::read_to_string(path)
                        .with_context(|| format!("reading backend config {}", path.display()))
                        .map_err(Failure::input)?;
                    serde_json::from_str::<HttpOcrConfig>(&raw)
                        .with_context(|| format!("parsing backend config {}", path.display()))
                        .map_err(Failure::input)?
                }
                None => HttpOcrConfig {
                    endpoint: String::new(),
                    timeout_secs: 30,
                },
            };
            if let Some(endpoint) = &args.endpoint {
                config.endpoint = endpoint.clone();
            }
            if config.endpoint.is_empty() {
                return Err(Failure::input(anyhow::anyhow!(
                    "--backend http requires --endpoint or --backend-config"
                )));
            }
            let backend = HttpOcrBackend::from_env(&config).map_err(fetch_failure)?;
            Ok(Box::new(backend))
        }
    }
}

fn fetch_failure(error: OcrError) -> Failure {
    match &error {
        OcrError::AuthMissing { .. } | OcrError::BackendUnavailable { .. } => {
            Failure::backend(error)
        }
        OcrError::CallFailed { .. } => Failure::backend(error),
    }
}
