//! Command-line front door: `score`, `batch`, `regress`, and `ocr-fetch`.
//!
//! Exit codes: 0 success, 2 input/validation error, 3 backend or
//! environment error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use abhinaw_core::analysis::ReportFormat;

#[derive(Parser)]
#[command(
    name = "abhinaw",
    version,
    about = "Score text fidelity in OCR transcripts of AI-generated images"
)]
struct Cli {
    /// Cosine gate threshold; word rearrangement is forgiven strictly above it.
    #[arg(long, global = true, default_value_t = abhinaw_core::DEFAULT_THRESHOLD)]
    threshold: f64,

    /// Compare texts without lowercasing them first.
    #[arg(long = "no-case-fold", global = true)]
    no_case_fold: bool,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

impl From<OutputFormat> for ReportFormat {
    fn from(value: OutputFormat) -> Self {
        match value {
            OutputFormat::Json => ReportFormat::Json,
            OutputFormat::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    /// Deterministic backend scripted by a JSON file.
    Fixture,
    /// Generic HTTP vision backend (POST bytes, read text).
    Http,
}

#[derive(Subcommand)]
enum Command {
    /// Score one candidate against a reference and print the breakdown.
    Score {
        /// Text the image was asked to contain.
        #[arg(long)]
        reference: String,
        /// One OCR transcript of the generated image.
        #[arg(long)]
        candidate: String,
    },

    /// Evaluate a transcript CSV against a reference CSV and write a report.
    Batch {
        /// CSV with header reference_id,reference_text,category.
        #[arg(long)]
        references: PathBuf,
        /// CSV with header reference_id,image_index,repetition_index,text.
        #[arg(long)]
        transcripts: PathBuf,
        /// Report file (JSON or CSV per --format).
        #[arg(long)]
        out: PathBuf,
        /// Optional score-vs-length scatter plot.
        #[arg(long)]
        plot: Option<PathBuf>,
    },

    /// Fit one score set against another per category (for example
    /// automated x against manual y).
    Regress {
        /// CSV with header reference_id,category,score (the x axis).
        #[arg(long)]
        x: PathBuf,
        /// CSV with header reference_id,category,score (the y axis).
        #[arg(long)]
        y: PathBuf,
        /// Regression result JSON.
        #[arg(long)]
        out: PathBuf,
        /// Optional scatter + fitted line plot (one file per category).
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Transcribe every image in a directory, several times each, and
    /// tabulate the readings as a transcript CSV.
    OcrFetch {
        /// Directory of image files, ordered by file name.
        #[arg(long)]
        images_dir: PathBuf,
        /// Reference id stamped on every row.
        #[arg(long)]
        reference_id: String,
        /// OCR readings per image.
        #[arg(long, default_value_t = 10)]
        repetitions: u32,
        #[arg(long, value_enum, default_value_t = BackendKind::Http)]
        backend: BackendKind,
        /// Fixture script (fixture backend only).
        #[arg(long)]
        script: Option<PathBuf>,
        /// Endpoint URL (http backend; overrides --backend-config).
        #[arg(long)]
        endpoint: Option<String>,
        /// JSON file with {"endpoint": ..., "timeout_secs": ...}.
        #[arg(long)]
        backend_config: Option<PathBuf>,
        /// Output transcript CSV.
        #[arg(long)]
        out: PathBuf,
        /// Concurrent backend calls.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        /// Attempts per call, including the first.
        #[arg(long, default_value_t = 3)]
        max_attempts: u32,
        /// Pause between attempts, in milliseconds.
        #[arg(long, default_value_t = 250)]
        retry_backoff_ms: u64,
    },
}

/// Settings shared by every subcommand.
pub struct RunConfig {
    pub threshold: f64,
    pub case_fold: bool,
    pub format: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if !(cli.threshold > 0.0 && cli.threshold < 1.0) {
        eprintln!(
            "error: --threshold must be strictly between 0 and 1, got {}",
            cli.threshold
        );
        return ExitCode::from(2);
    }

    let config = RunConfig {
        threshold: cli.threshold,
        case_fold: !cli.no_case_fold,
        format: cli.format.into(),
    };

    let result = match cli.command {
        Command::Score {
            reference,
            candidate,
        } => commands::score::run(&reference, &candidate, &config),
        Command::Batch {
            references,
            transcripts,
            out,
            plot,
        } => commands::batch::run(&references, &transcripts, &out, plot.as_deref(), &config),
        Command::Regress { x, y, out, svg } => {
            commands::regress::run(&x, &y, &out, svg.as_deref(), &config)
        }
        Command::OcrFetch {
            images_dir,
            reference_id,
            repetitions,
            backend,
            script,
            endpoint,
            backend_config,
            out,
            jobs,
            max_attempts,
            retry_backoff_ms,
        } => commands::ocr_fetch::run(commands::ocr_fetch::Args {
            images_dir,
            reference_id,
            repetitions,
            backend,
            script,
            endpoint,
            backend_config,
            out,
            jobs,
            max_attempts,
            retry_backoff_ms,
        }),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}

/// A command failure carrying its exit code.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    /// Input or validation problem: exit 2.
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }

    /// Backend or environment problem: exit 3.
    fn backend(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 3,
            error: error.into(),
        }
    }
}
