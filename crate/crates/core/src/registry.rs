//! Named metric extractors.
//!
//! Every property in the model is scored from one stream of per-artifact
//! values. An extractor turns the project's raw measurements into that
//! stream. Extractors are registered by name and the model configuration
//! selects one per property, so a property can be re-pointed at a different
//! measurement (or a new extractor added) without touching the scoring code.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::metrics::{ClassicalMetricSet, QuantumMetricSet};
use crate::scoring::MetricRecord;

/// Raw project measurements every extractor reads from.
#[derive(Debug, Clone, Default)]
pub struct Measurements {
    pub circuits: Vec<QuantumMetricSet>,
    pub classical_files: Vec<ClassicalMetricSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactScope {
    Circuit,
    Function,
    File,
}

pub trait MetricExtractor: Send + Sync {
    fn name(&self) -> &str;

    fn scope(&self) -> ArtifactScope;

    fn describe(&self) -> &str {
        ""
    }

    fn extract(&self, measurements: &Measurements) -> Vec<MetricRecord>;
}

type CircuitRead = fn(&QuantumMetricSet) -> usize;

/// One value per circuit, read from a field of its metric set.
pub struct CircuitField {
    name: &'static str,
    description: &'static str,
    read: CircuitRead,
}

impl MetricExtractor for CircuitField {
    fn name(&self) -> &str {
        self.name
    }

    fn scope(&self) -> ArtifactScope {
        ArtifactScope::Circuit
    }

    fn describe(&self) -> &str {
        self.description
    }

    fn extract(&self, m: &Measurements) -> Vec<MetricRecord> {
        m.circuits
            .iter()
            .map(|c| MetricRecord {
                metric: self.name.to_string(),
                artifact: c.path.clone(),
                value: (self.read)(c) as f64,
            })
            .collect()
    }
}

/// One value per classical function.
pub struct FunctionField {
    name: &'static str,
    description: &'static str,
    read: fn(&ClassicalMetricSet) -> Vec<(String, usize)>,
}

impl MetricExtractor for FunctionField {
    fn name(&self) -> &str {
        self.name
    }

    fn scope(&self) -> ArtifactScope {
        ArtifactScope::Function
    }

    fn describe(&self) -> &str {
        self.description
    }

    fn extract(&self, m: &Measurements) -> Vec<MetricRecord> {
        m.classical_files
            .iter()
            .flat_map(|file| {
                (self.read)(file)
                    .into_iter()
                    .map(move |(func, value)| MetricRecord {
                        metric: self.name.to_string(),
                        artifact: format!("{}::{}", file.path, func),
                        value: value as f64,
                    })
            })
            .collect()
    }
}

/// One value per classical file; `None` leaves the file out.
pub struct FileField {
    name: &'static str,
    description: &'static str,
    read: fn(&ClassicalMetricSet) -> Option<f64>,
}

impl MetricExtractor for FileField {
    fn name(&self) -> &str {
        self.name
    }

    fn scope(&self) -> ArtifactScope {
        ArtifactScope::File
    }

    fn describe(&self) -> &str {
        self.description
    }

    fn extract(&self, m: &Measurements) -> Vec<MetricRecord> {
        m.classical_files
            .iter()
            .filter_map(|file| {
                (self.read)(file).map(|value| MetricRecord {
                    metric: self.name.to_string(),
                    artifact: file.path.clone(),
                    value,
                })
            })
            .collect()
    }
}

#[derive(Clone, Default)]
pub struct MetricRegistry {
    extractors: BTreeMap<String, Arc<dyn MetricExtractor>>,
}

impl std::fmt::Debug for MetricRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.extractors.keys()).finish()
    }
}

impl MetricRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding every built-in extractor.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        let circuit: &[(&'static str, &'static str, CircuitRead)] = &[
            ("circuit_width", "declared qubits", |c| c.width),
            (
                "circuit_depth",
                "dependency layers of executable operations",
                |c| c.depth,
            ),
            ("gate_count_total", "gate instructions", |c| {
                c.gate_count_total
            }),
            ("gate_count_multi", "gates on two or more qubits", |c| {
                c.gate_count_multi
            }),
            (
                "gate_complexity_score",
                "gates weighted by qubit arity",
                |c| c.gate_complexity_score,
            ),
            (
                "conditional_count",
                "classically conditioned instructions",
                |c| c.conditional_count,
            ),
            ("quantum_cyclomatic", "conditioned instructions + 1", |c| {
                c.quantum_cyclomatic
            }),
            ("measure_count", "measurements", |c| c.measure_count),
            (
                "nonterminal_measure_count",
                "measurements followed by more work on the qubit",
                |c| c.nonterminal_measure_count,
            ),
            ("reset_count", "resets", |c| c.reset_count),
            (
                "midcircuit_reset_count",
                "resets after work on the qubit",
                |c| c.midcircuit_reset_count,
            ),
            (
                "auxiliary_qubit_count",
                "qubits classified as ancillas",
                |c| c.auxiliary_qubit_count,
            ),
        ];
        for &(name, description, read) in circuit {
            reg.register(CircuitField {
                name,
                description,
                read,
            });
        }
        reg.register(FunctionField {
            name: "function_cyclomatic",
            description: "McCabe complexity per function",
            read: |f| {
                f.function_complexities
                    .iter()
                    .map(|v| (v.name.clone(), v.value))
                    .collect()
            },
        });
        reg.register(FunctionField {
            name: "function_code_lines",
            description: "code lines per function",
            read: |f| {
                f.function_sizes
                    .iter()
                    .map(|v| (v.name.clone(), v.value))
                    .collect()
            },
        });
        reg.register(FileField {
            name: "comment_deficit_pct",
            description: "100 * (1 - comment density), files with content only",
            read: |f| {
                (f.comment_lines + f.code_lines > 0).then_some(100.0 * (1.0 - f.comment_density))
            },
        });
        reg.register(FileField {
            name: "duplicate_token_pct",
            description: "percent of tokens inside duplicated shingles",
            read: |f| Some(100.0 * f.duplicate_token_ratio),
        });
        reg
    }

    /// Adds or replaces an extractor under its own name.
    pub fn register(&mut self, extractor: impl MetricExtractor + 'static) {
        self.extractors
            .insert(extractor.name().to_string(), Arc::new(extractor));
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn MetricExtractor>> {
        self.extractors.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.extractors.keys().map(String::as_str)
    }
}
