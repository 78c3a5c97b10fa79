//! Project discovery and ingestion.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::classical::{analyze_bytes, ClassicalFileFacts};
use crate::config::ModelConfig;
use crate::error::ScanError;
use crate::qasm::{expand_user_gates, parse_program, QuantumCircuit};

pub const CIRCUIT_EXTENSION: &str = "qasm";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedEntry {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectInventory {
    pub root: PathBuf,
    pub circuit_files: Vec<PathBuf>,
    pub classical_files: Vec<PathBuf>,
    pub skipped: Vec<SkippedEntry>,
}

impl ProjectInventory {
    /// Path relative to the root with `/` separators, used as artifact label.
    pub fn label(&self, path: &Path) -> String {
        relative_label(&self.root, path)
    }
}

fn relative_label(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// A per-file problem that did not stop the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.path)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
            if let Some(column) = self.column {
                write!(f, ":{column}")?;
            }
        }
        write!(f, ": {}", self.message)
    }
}

fn has_extension(path: &Path, wanted: &str) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case(wanted))
}

/// Walks `root` without following symlinks, partitioning files by extension.
pub fn scan(root: &Path, config: &ModelConfig) -> Result<ProjectInventory, ScanError> {
    if !root.is_dir() {
        return Err(ScanError::NotADirectory(root.to_path_buf()));
    }
    let mut inv = ProjectInventory {
        root: root.to_path_buf(),
        circuit_files: Vec::new(),
        classical_files: Vec::new(),
        skipped: Vec::new(),
    };
    let mut walker = WalkDir::new(root)
        .follow_links(false)
        .sort_by_file_name()
        .into_iter();
    while let Some(entry) = walker.next() {
        let entry = match entry {
            Ok(entry) => entry,
            Err(err) => {
                let path = err
                    .path()
                    .map(|p| relative_label(root, p))
                    .unwrap_or_default();
                let reason = err
                    .io_error()
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| err.to_string());
                inv.skipped.push(SkippedEntry { path, reason });
                continue;
            }
        };
        if entry.depth() == 0 {
            continue;
        }
        let name = entry.file_name().to_string_lossy();
        let ft = entry.file_type();
        if ft.is_symlink() {
            inv.skipped.push(SkippedEntry {
                path: relative_label(root, entry.path()),
                reason: "symbolic link not followed".into(),
            });
            continue;
        }
        if ft.is_dir() {
            let reason = if name.starts_with('.') {
                Some("hidden directory")
            } else if config.ignore_dirs.iter().any(|d| *d == name) {
                Some("ignored directory")
            } else {
                None
            };
            if let Some(reason) = reason {
                inv.skipped.push(SkippedEntry {
                    path: relative_label(root, entry.path()),
                    reason: reason.into(),
                });
                walker.skip_current_dir();
            }
            continue;
        }
        if !ft.is_file() {
            continue;
        }
        let path = entry.into_path();
        if has_extension(&path, CIRCUIT_EXTENSION) {
            inv.circuit_files.push(path);
        } else if config
            .classical_extensions
            .iter()
            .any(|ext| has_extension(&path, ext))
        {
            inv.classical_files.push(path);
        }
    }
    inv.circuit_files.sort();
    inv.classical_files.sort();
    inv.skipped.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(inv)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestOptions {
    pub expand_gates: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub circuits: Vec<QuantumCircuit>,
    pub classical: Vec<ClassicalFileFacts>,
    pub diagnostics: Vec<Diagnostic>,
}

enum Outcome<T> {
    Ok(T),
    Failed(Diagnostic),
}

/// Parses every inventoried file in parallel. Failures become diagnostics;
/// results keep inventory (path) order.
pub fn ingest(
    inventory: &ProjectInventory,
    config: &ModelConfig,
    options: IngestOptions,
) -> Ingested {
    let circuits: Vec<Outcome<QuantumCircuit>> = inventory
        .circuit_files
        .par_iter()
        .map(|path| ingest_circuit(path, &inventory.label(path), options))
        .collect();
    let rules = config.classical_rules();
    let classical: Vec<Outcome<ClassicalFileFacts>> = inventory
        .classical_files
        .par_iter()
        .map(|path| {
            let label = inventory.label(path);
            match std::fs::read(path) {
                Ok(bytes) => match analyze_bytes(&bytes, &label, &rules) {
                    Ok(facts) => Outcome::Ok(facts),
                    Err(e) => Outcome::Failed(file_diagnostic(label, e.to_string())),
                },
                Err(e) => Outcome::Failed(file_diagnostic(label, e.to_string())),
            }
        })
        .collect();

    let mut out = Ingested::default();
    for outcome in circuits {
        match outcome {
            Outcome::Ok(c) => out.circuits.push(c),
            Outcome::Failed(d) => out.diagnostics.push(d),
        }
    }
    for outcome in classical {
        match outcome {
            Outcome::Ok(f) => out.classical.push(f),
            Outcome::Failed(d) => out.diagnostics.push(d),
        }
    }
    out.diagnostics.sort_by(|a, b| a.path.cmp(&b.path));
    out
}

fn file_diagnostic(path: String, message: String) -> Diagnostic {
    Diagnostic {
        path,
        line: None,
        column: None,
        message,
    }
}

fn ingest_circuit(path: &Path, label: &str, options: IngestOptions) -> Outcome<QuantumCircuit> {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return Outcome::Failed(file_diagnostic(label.to_string(), e.to_string())),
    };
    let Ok(text) = std::str::from_utf8(&bytes) else {
        return Outcome::Failed(file_diagnostic(
            label.to_string(),
            "input is not UTF-8 text".into(),
        ));
    };
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let result = parse_program(text, label).and_then(|program| {
        if options.expand_gates {
            expand_user_gates(&program.circuit, &program.gates)
        } else {
            Ok(program.circuit)
        }
    });
    match result {
        Ok(c) => Outcome::Ok(c),
        Err(e) => Outcome::Failed(Diagnostic {
            path: label.to_string(),
            line: e.span().map(|s| s.line),
            column: e.span().map(|s| s.column),
            message: e.detail(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    const BELL: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\nh q[0];\ncx q[0],q[1];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n";

    fn write(root: &Path, rel: &str, body: &str) {
        let p = root.join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(p, body).unwrap();
    }

    #[test]
    fn partitions_by_extension() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["c.qasm", "a.qasm", "sub/b.qasm"] {
            write(dir.path(), name, BELL);
        }
        write(dir.path(), "main.py", "x = 1\n");
        write(dir.path(), "lib/util.py", "y = 2\n");
        write(dir.path(), "README.md", "# hi\n");
        let inv = scan(dir.path(), &ModelConfig::default()).unwrap();
        let labels: Vec<_> = inv.circuit_files.iter().map(|p| inv.label(p)).collect();
        assert_eq!(labels, vec!["a.qasm", "c.qasm", "sub/b.qasm"]);
        assert_eq!(inv.classical_files.len(), 2);
        assert!(inv.skipped.is_empty());
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let inv = scan(dir.path(), &ModelConfig::default()).unwrap();
        assert!(inv.circuit_files.is_empty() && inv.classical_files.is_empty());
    }

    #[test]
    fn not_a_directory() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "f.qasm", BELL);
        assert!(matches!(
            scan(&dir.path().join("f.qasm"), &ModelConfig::default()),
            Err(ScanError::NotADirectory(_))
        ));
        assert!(matches!(
            scan(&dir.path().join("missing"), &ModelConfig::default()),
            Err(ScanError::NotADirectory(_))
        ));
    }

    #[test]
    fn hidden_and_ignored_directories_skipped() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), ".hidden/x.qasm", BELL);
        write(dir.path(), "venv/lib/site.py", "x = 1\n");
        write(dir.path(), "node_modules/m.py", "x = 1\n");
        write(dir.path(), "src/keep.py", "x = 1\n");
        let inv = scan(dir.path(), &ModelConfig::default()).unwrap();
        assert!(inv.circuit_files.is_empty());
        assert_eq!(inv.classical_files.len(), 1);
        let reasons: Vec<_> = inv
            .skipped
            .iter()
            .map(|s| (s.path.as_str(), s.reason.as_str()))
            .collect();
        assert_eq!(
            reasons,
            vec![
                (".hidden", "hidden directory"),
                ("node_modules", "ignored directory"),
                ("venv", "ignored directory"),
            ]
        );
    }

    #[cfg(unix)]
    #[test]
    fn symlinks_not_followed() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "real/a.qasm", BELL);
        std::os::unix::fs::symlink(dir.path().join("real"), dir.path().join("loop")).unwrap();
        let inv = scan(dir.path(), &ModelConfig::default()).unwrap();
        assert_eq!(inv.circuit_files.len(), 1);
        assert_eq!(inv.skipped[0].path, "loop");
    }

    #[test]
    fn ingest_isolates_failures() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.qasm", BELL);
        write(dir.path(), "b.qasm", BELL);
        write(
            dir.path(),
            "broken.qasm",
            "OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n",
        );
        write(dir.path(), "bin.py", "\u{0}\u{1}");
        write(dir.path(), "ok.py", "def f():\n    return 1\n");
        let cfg = ModelConfig::default();
        let inv = scan(dir.path(), &cfg).unwrap();
        let got = ingest(&inv, &cfg, IngestOptions::default());
        assert_eq!(got.circuits.len(), 2);
        assert_eq!(got.classical.len(), 1);
        assert_eq!(got.diagnostics.len(), 2);
        assert_eq!(got.diagnostics[0].path, "bin.py");
        let broken = &got.diagnostics[1];
        assert_eq!(broken.path, "broken.qasm");
        assert_eq!(broken.line, Some(3));
    }

    #[test]
    fn expansion_flag_applies() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "g.qasm",
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\ngate bell a,b { h a; cx a,b; }\nqreg q[2];\nbell q[0],q[1];\n",
        );
        let cfg = ModelConfig::default();
        let inv = scan(dir.path(), &cfg).unwrap();
        let plain = ingest(
            &inv,
            &cfg,
            IngestOptions {
                expand_gates: false,
            },
        );
        let expanded = ingest(&inv, &cfg, IngestOptions { expand_gates: true });
        assert_eq!(plain.circuits[0].instructions.len(), 1);
        assert_eq!(expanded.circuits[0].instructions.len(), 2);
    }
}
