//! Command-line orchestration, independent of argument parsing.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::ModelConfig;
use crate::error::{AnalysisError, ScoringError};
use crate::pipeline::analyze_project;
use crate::report::{render_json, render_text, AnalysabilityReport};
use crate::scanner::IngestOptions;

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;

/// JSON report file name used when `--output` is not given.
pub const DEFAULT_JSON_OUTPUT: &str = "analysability.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Both,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "both" => Ok(OutputFormat::Both),
            other => Err(format!(
                "unknown format `{other}` (expected text, json or both)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliInvocation {
    pub project_root: PathBuf,
    pub config_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub expand_gates: bool,
    pub fail_below_level: Option<u8>,
}

impl CliInvocation {
    pub fn new(project_root: impl Into<PathBuf>) -> Self {
        Self {
            project_root: project_root.into(),
            config_path: None,
            output_path: None,
            format: OutputFormat::Text,
            expand_gates: false,
            fail_below_level: None,
        }
    }
}

/// Exit code for a finished report: the gate fails when the level is below
/// the requested minimum.
pub fn gate_exit_code(report: &AnalysabilityReport, fail_below_level: Option<u8>) -> i32 {
    match fail_below_level {
        Some(min) if report.analysability_level < min => EXIT_GATE_FAILED,
        _ => EXIT_OK,
    }
}

/// Runs the pipeline, writing outputs to the process stdout/stderr.
pub fn run(invocation: &CliInvocation) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(invocation, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(invocation: &CliInvocation, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(level) = invocation.fail_below_level {
        if !(1..=5).contains(&level) {
            let _ = writeln!(
                err,
                "error: --fail-below-level must be between 1 and 5, got {level}"
            );
            return EXIT_USAGE;
        }
    }
    let config = match &invocation.config_path {
        Some(path) => match ModelConfig::from_path(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        None => ModelConfig::default(),
    };
    let options = IngestOptions {
        expand_gates: invocation.expand_gates,
    };
    let report = match analyze_project(&invocation.project_root, &config, options) {
        Ok(report) => report,
        Err(AnalysisError::Scoring(ScoringError::NoApplicableProperties)) => {
            let _ = writeln!(
                err,
                "error: `{}` has no circuits or classical files to evaluate",
                invocation.project_root.display()
            );
            return EXIT_NOT_APPLICABLE;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    for d in &report.diagnostics {
        let _ = writeln!(err, "warning: {d}");
    }

    let json_target = || {
        invocation
            .output_path
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_JSON_OUTPUT))
    };
    let written = match invocation.format {
        OutputFormat::Text => match &invocation.output_path {
            Some(path) => write_file(path, render_text(&report).as_bytes()),
            None => out.write_all(render_text(&report).as_bytes()),
        },
        OutputFormat::Json => write_file(&json_target(), &render_json(&report)),
        OutputFormat::Both => out
            .write_all(render_text(&report).as_bytes())
            .and_then(|_| write_file(&json_target(), &render_json(&report))),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    gate_exit_code(&report, invocation.fail_below_level)
}

fn write_file(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    std::fs::write(path, bytes)
}
