//! Model configuration: which properties are scored, from which metric,
//! with which thresholds, profile bands and weights.
//!
//! A config document only needs to name what it changes; everything else
//! keeps the shipped defaults. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classical::{ClassicalRules, DEFAULT_DECISION_KEYWORDS};
use crate::error::ConfigError;
use crate::metrics::{DEFAULT_AUXILIARY_PREFIXES, DEFAULT_SHINGLE_SIZE};
use crate::registry::MetricRegistry;
use crate::scoring::{LevelCutPoints, ProfileBands, SeverityThresholds};

pub const DEFAULT_IGNORE_DIRS: &[&str] = &["venv", "node_modules", ".git", "build", "target"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyConfig {
    pub enabled: bool,
    pub weight: f64,
    /// Name of the registered extractor feeding classification.
    pub metric: String,
    pub thresholds: SeverityThresholds,
    pub bands: ProfileBands,
}

impl PropertyConfig {
    fn new(metric: &str, level3_max: f64, level2_max: f64) -> Self {
        Self {
            enabled: true,
            weight: 1.0,
            metric: metric.to_string(),
            thresholds: SeverityThresholds::new(level3_max, level2_max),
            bands: ProfileBands::CIRCUIT_WIDTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub properties: BTreeMap<String, PropertyConfig>,
    pub level_cut_points: LevelCutPoints,
    pub auxiliary_register_prefixes: Vec<String>,
    pub duplicate_shingle_size: usize,
    pub classical_extensions: Vec<String>,
    pub ignore_dirs: Vec<String>,
    pub decision_keywords: Vec<String>,
}

/// Shipped property table. Circuit width thresholds are the reference values;
/// the rest are calibration defaults meant to be overridden.
fn default_properties() -> BTreeMap<String, PropertyConfig> {
    [
        (
            "circuit_width",
            PropertyConfig::new("circuit_width", 8.0, 15.0),
        ),
        (
            "circuit_depth",
            PropertyConfig::new("circuit_depth", 25.0, 60.0),
        ),
        (
            "gate_complexity",
            PropertyConfig::new("gate_complexity_score", 30.0, 100.0),
        ),
        (
            "conditional_instructions",
            PropertyConfig::new("conditional_count", 0.0, 2.0),
        ),
        (
            "quantum_cyclomatic_complexity",
            PropertyConfig::new("quantum_cyclomatic", 2.0, 4.0),
        ),
        (
            "measurement_operations",
            PropertyConfig::new("nonterminal_measure_count", 0.0, 1.0),
        ),
        (
            "initialization_reset",
            PropertyConfig::new("midcircuit_reset_count", 0.0, 2.0),
        ),
        (
            "auxiliary_qubits",
            PropertyConfig::new("auxiliary_qubit_count", 2.0, 4.0),
        ),
        (
            "cyclomatic_complexity",
            PropertyConfig::new("function_cyclomatic", 10.0, 20.0),
        ),
        (
            "method_size",
            PropertyConfig::new("function_code_lines", 30.0, 60.0),
        ),
        (
            "code_documentation",
            PropertyConfig::new("comment_deficit_pct", 40.0, 75.0),
        ),
        (
            "duplicate_code",
            PropertyConfig::new("duplicate_token_pct", 5.0, 15.0),
        ),
    ]
    .into_iter()
    .map(|(name, cfg)| (name.to_string(), cfg))
    .collect()
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            properties: default_properties(),
            level_cut_points: LevelCutPoints::default(),
            auxiliary_register_prefixes: strings(DEFAULT_AUXILIARY_PREFIXES),
            duplicate_shingle_size: DEFAULT_SHINGLE_SIZE,
            classical_extensions: strings(&["py"]),
            ignore_dirs: strings(DEFAULT_IGNORE_DIRS),
            decision_keywords: strings(DEFAULT_DECISION_KEYWORDS),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PropertyOverride {
    enabled: Option<bool>,
    weight: Option<f64>,
    metric: Option<String>,
    thresholds: Option<SeverityThresholds>,
    bands: Option<ProfileBands>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDocument {
    #[serde(default)]
    properties: BTreeMap<String, PropertyOverride>,
    level_cut_points: Option<LevelCutPoints>,
    auxiliary_register_prefixes: Option<Vec<String>>,
    duplicate_shingle_size: Option<usize>,
    classical_extensions: Option<Vec<String>>,
    ignore_dirs: Option<Vec<String>>,
    decision_keywords: Option<Vec<String>>,
}

impl ModelConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Overlays a JSON config document on the defaults and validates it
    /// against the built-in extractor registry.
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        Self::from_json_str_with(text, &MetricRegistry::builtin())
    }

    pub fn from_json_str_with(text: &str, registry: &MetricRegistry) -> Result<Self, ConfigError> {
        let doc: ConfigDocument = serde_json::from_str(text)?;
        let mut cfg = ModelConfig::default();
        for (name, ov) in doc.properties {
            match cfg.properties.get_mut(&name) {
                Some(existing) => {
                    if let Some(v) = ov.enabled {
                        existing.enabled = v;
                    }
                    if let Some(v) = ov.weight {
                        existing.weight = v;
                    }
                    if let Some(v) = ov.metric {
                        existing.metric = v;
                    }
                    if let Some(v) = ov.thresholds {
                        existing.thresholds = v;
                    }
                    if let Some(v) = ov.bands {
                        existing.bands = v;
                    }
                }
                None => {
                    let (Some(metric), Some(thresholds)) = (ov.metric, ov.thresholds) else {
                        return Err(ConfigError::Invalid(format!(
                            "new property `{name}` needs both `metric` and `thresholds`"
                        )));
                    };
                    cfg.properties.insert(
                        name,
                        PropertyConfig {
                            enabled: ov.enabled.unwrap_or(true),
                            weight: ov.weight.unwrap_or(1.0),
                            metric,
                            thresholds,
                            bands: ov.bands.unwrap_or(ProfileBands::CIRCUIT_WIDTH),
                        },
                    );
                }
            }
        }
        if let Some(v) = doc.level_cut_points {
            cfg.level_cut_points = v;
        }
        if let Some(v) = doc.auxiliary_register_prefixes {
            cfg.auxiliary_register_prefixes = v;
        }
        if let Some(v) = doc.duplicate_shingle_size {
            cfg.duplicate_shingle_size = v;
        }
        if let Some(v) = doc.classical_extensions {
            cfg.classical_extensions = v;
        }
        if let Some(v) = doc.ignore_dirs {
            cfg.ignore_dirs = v;
        }
        if let Some(v) = doc.decision_keywords {
            cfg.decision_keywords = v;
        }
        cfg.classical_extensions = cfg
            .classical_extensions
            .iter()
            .map(|e| e.trim_start_matches('.').to_string())
            .collect();
        cfg.validate(registry)?;
        Ok(cfg)
    }

    pub fn validate(&self, registry: &MetricRegistry) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        if let Err(msg) = self.level_cut_points.validate() {
            return invalid(msg);
        }
        if self.duplicate_shingle_size < 2 {
            return invalid(format!(
                "duplicate_shingle_size must be at least 2, got {}",
                self.duplicate_shingle_size
            ));
        }
        if self
            .classical_extensions
            .iter()
            .any(|e| e.eq_ignore_ascii_case("qasm"))
        {
            return invalid("`qasm` is reserved for circuit files".into());
        }
        let mut total_weight = 0.0;
        for (name, prop) in self.properties.iter().filter(|(_, p)| p.enabled) {
            if !(prop.weight.is_finite() && prop.weight >= 0.0) {
                return invalid(format!("property `{name}`: weight must be finite and >= 0"));
            }
            if registry.get(&prop.metric).is_none() {
                return invalid(format!(
                    "property `{name}`: unknown metric `{}`",
                    prop.metric
                ));
            }
            if let Err(msg) = prop.thresholds.validate() {
                return invalid(format!("property `{name}`: {msg}"));
            }
            if let Err(msg) = prop.bands.validate() {
                return invalid(format!("property `{name}`: {msg}"));
            }
            total_weight += prop.weight;
        }
        if total_weight <= 0.0 {
            return invalid("enabled property weights must not all be zero".into());
        }
        Ok(())
    }

    pub fn classical_rules(&self) -> ClassicalRules {
        ClassicalRules {
            decision_keywords: self.decision_keywords.clone(),
        }
    }

    /// SHA-256 over the canonical JSON of the effective config.
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
    }
}
