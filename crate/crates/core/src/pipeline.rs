//! scan -> ingest -> measure -> evaluate -> aggregate.

use std::path::Path;

use crate::classical::ClassicalFileFacts;
use crate::config::ModelConfig;
use crate::error::AnalysisError;
use crate::metrics::{measure_circuit, measure_files};
use crate::qasm::QuantumCircuit;
use crate::registry::{Measurements, MetricRegistry};
use crate::report::{AnalysabilityReport, ProjectSummary, TOOL_VERSION};
use crate::scanner::{ingest, scan, Diagnostic, IngestOptions, SkippedEntry};
use crate::scoring::{aggregate, evaluate_property, PropertyEvaluation};

/// Raw measurements for already-parsed artifacts.
pub fn measure(
    circuits: &[QuantumCircuit],
    classical: &[ClassicalFileFacts],
    config: &ModelConfig,
) -> Result<Measurements, AnalysisError> {
    let mut circuit_sets: Vec<_> = circuits
        .iter()
        .map(|c| measure_circuit(c, &config.auxiliary_register_prefixes))
        .collect();
    circuit_sets.sort_by(|a, b| a.path.cmp(&b.path));
    let mut file_sets = measure_files(classical, config.duplicate_shingle_size)?;
    file_sets.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(Measurements {
        circuits: circuit_sets,
        classical_files: file_sets,
    })
}

/// Scores every enabled property, ordered by property name.
pub fn evaluate_properties(
    measurements: &Measurements,
    config: &ModelConfig,
    registry: &MetricRegistry,
) -> Vec<PropertyEvaluation> {
    config
        .properties
        .iter()
        .filter(|(_, p)| p.enabled)
        .filter_map(|(name, p)| {
            let extractor = registry.get(&p.metric)?;
            let records = extractor.extract(measurements);
            Some(evaluate_property(
                name,
                &p.metric,
                p.weight,
                &records,
                &p.thresholds,
                &p.bands,
            ))
        })
        .collect()
}

/// Builds the full report for measured artifacts.
pub fn build_report(
    project: ProjectSummary,
    measurements: Measurements,
    diagnostics: Vec<Diagnostic>,
    config: &ModelConfig,
    registry: &MetricRegistry,
) -> Result<AnalysabilityReport, AnalysisError> {
    let properties = evaluate_properties(&measurements, config, registry);
    let (value, level) = aggregate(&properties, &config.level_cut_points)?;
    Ok(AnalysabilityReport {
        tool_version: TOOL_VERSION.to_string(),
        config_fingerprint: config.fingerprint(),
        project,
        circuits: measurements.circuits,
        classical_files: measurements.classical_files,
        properties,
        analysability_value: value,
        analysability_level: level,
        diagnostics,
    })
}

/// End-to-end analysis of a project directory.
pub fn analyze_project(
    root: &Path,
    config: &ModelConfig,
    options: IngestOptions,
) -> Result<AnalysabilityReport, AnalysisError> {
    analyze_project_with(root, config, options, &MetricRegistry::builtin())
}

pub fn analyze_project_with(
    root: &Path,
    config: &ModelConfig,
    options: IngestOptions,
    registry: &MetricRegistry,
) -> Result<AnalysabilityReport, AnalysisError> {
    let inventory = scan(root, config)?;
    let ingested = ingest(&inventory, config, options);
    let measurements = measure(&ingested.circuits, &ingested.classical, config)?;
    let skipped: Vec<SkippedEntry> = inventory.skipped.clone();
    let project = ProjectSummary {
        root: root.display().to_string(),
        circuit_files: inventory.circuit_files.len(),
        classical_files: inventory.classical_files.len(),
        expand_gates: options.expand_gates,
        skipped,
    };
    build_report(
        project,
        measurements,
        ingested.diagnostics,
        config,
        registry,
    )
}
