//! Analysability measurement for hybrid quantum-classical software.
//!
//! OpenQASM 2.0 circuits and Python-style classical sources are parsed into
//! per-artifact measurements. Each quality property classifies its artifacts
//! into three severity levels, turns the level counts into densities, and
//! maps those through a banded profile function to a 0-100 quality value.
//! Property qualities are combined into an analysability value and a 1-5
//! level.
//!
//! ```
//! use hqa_core::qasm::parse_qasm;
//! use hqa_core::metrics::{circuit_depth, circuit_width};
//!
//! let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n\
//!            qreg q[2]; creg c[2];\n\
//!            h q[0]; cx q[0],q[1];\n\
//!            measure q[0] -> c[0]; measure q[1] -> c[1];";
//! let circuit = parse_qasm(src, "bell.qasm").unwrap();
//! assert_eq!(circuit_width(&circuit), 2);
//! assert_eq!(circuit_depth(&circuit), 3);
//! ```

pub mod classical;
pub mod cli;
pub mod config;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod qasm;
pub mod registry;
pub mod report;
pub mod scanner;
pub mod scoring;

pub use config::ModelConfig;
pub use error::{
    AnalysisError, ClassicalError, ConfigError, MetricsError, QasmError, ScanError, ScoringError,
};
pub use pipeline::analyze_project;
pub use report::AnalysabilityReport;
