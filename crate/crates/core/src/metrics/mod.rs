//! Property measurements: per circuit and per classical file.

pub mod classical;
pub mod quantum;

pub use classical::{
    comment_density, cyclomatic, duplicate_ratio, measure_files, method_sizes, ClassicalMetricSet,
    NamedValue, DEFAULT_SHINGLE_SIZE,
};
pub use quantum::{
    auxiliary_qubits, circuit_depth, circuit_width, conditional_metrics, gate_complexity,
    measure_circuit, measurement_metrics, reset_metrics, GateCounts, QuantumMetricSet,
    DEFAULT_AUXILIARY_PREFIXES,
};
