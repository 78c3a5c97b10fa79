mod json;
mod text;

use serde::{Deserialize, Serialize};

use crate::metrics::{ClassicalMetricSet, QuantumMetricSet};
use crate::scanner::{Diagnostic, SkippedEntry};
use crate::scoring::PropertyEvaluation;

pub use json::{render_json, round_fraction, JSON_FRACTION_DIGITS};
pub use text::render_text;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectSummary {
    pub root: String,
    pub circuit_files: usize,
    pub classical_files: usize,
    pub expand_gates: bool,
    pub skipped: Vec<SkippedEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysabilityReport {
    pub tool_version: String,
    pub config_fingerprint: String,
    pub project: ProjectSummary,
    pub circuits: Vec<QuantumMetricSet>,
    pub classical_files: Vec<ClassicalMetricSet>,
    pub properties: Vec<PropertyEvaluation>,
    pub analysability_value: f64,
    pub analysability_level: u8,
    pub diagnostics: Vec<Diagnostic>,
}
