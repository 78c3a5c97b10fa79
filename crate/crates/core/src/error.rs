use std::path::PathBuf;

use thiserror::Error;

use crate::qasm::SourceSpan;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QasmError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },

    #[error("{span}: unsupported OpenQASM version `{version}` (only 2.0 is accepted)")]
    UnsupportedVersion { span: SourceSpan, version: String },

    #[error("{span}: undefined {what} `{name}`")]
    UndefinedSymbol {
        span: SourceSpan,
        what: &'static str,
        name: String,
    },

    #[error("{span}: index {index} out of range for register `{register}` of size {size}")]
    IndexOutOfRange {
        span: SourceSpan,
        register: String,
        index: usize,
        size: usize,
    },

    #[error(
        "gate expansion of `{gate}` exceeded the nesting limit of {limit} or is self-referential"
    )]
    RecursionLimit { gate: String, limit: usize },
}

impl QasmError {
    /// The message without its leading `line:column` prefix.
    pub fn detail(&self) -> String {
        let full = self.to_string();
        match self.span() {
            Some(span) => full
                .strip_prefix(&format!("{span}: "))
                .map(str::to_string)
                .unwrap_or(full),
            None => full,
        }
    }

    pub(crate) fn syntax(span: SourceSpan, message: impl Into<String>) -> Self {
        QasmError::Syntax {
            span,
            message: message.into(),
        }
    }

    /// Location of the offending statement, when known.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            QasmError::Syntax { span, .. }
            | QasmError::UnsupportedVersion { span, .. }
            | QasmError::UndefinedSymbol { span, .. }
            | QasmError::IndexOutOfRange { span, .. } => Some(*span),
            QasmError::RecursionLimit { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("input is not UTF-8 text")]
    NotText,
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("`{0}` is not a directory")]
    NotADirectory(PathBuf),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScoringError {
    #[error("no applicable property with positive weight to aggregate")]
    NoApplicableProperties,
    #[error("density of an empty population is not applicable")]
    NotApplicable,
}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("invalid config: shingle size must be at least 2, got {0}")]
    InvalidShingleSize(usize),
}

/// Failures of a whole-project analysis run.
#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Scan(#[from] ScanError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Scoring(#[from] ScoringError),
}
