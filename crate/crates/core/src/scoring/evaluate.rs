use serde::{Deserialize, Serialize};

use super::profile::{profile_quality, ProfileBands};
use super::severity::{classify, Severity, SeverityThresholds};
use crate::error::ScoringError;

/// One measured value of one artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub metric: String,
    pub artifact: String,
    pub value: f64,
}

/// Percentage of artifacts at each severity level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Densities {
    pub dc1: f64,
    pub dc2: f64,
    pub dc3: f64,
}

/// Each count over the population, in percent.
pub fn compute_densities(nc1: usize, nc2: usize, nc3: usize) -> Result<Densities, ScoringError> {
    let total = nc1 + nc2 + nc3;
    if total == 0 {
        return Err(ScoringError::NotApplicable);
    }
    let pct = |n: usize| 100.0 * n as f64 / total as f64;
    Ok(Densities {
        dc1: pct(nc1),
        dc2: pct(nc2),
        dc3: pct(nc3),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyEvaluation {
    pub property_name: String,
    pub metric: String,
    pub weight: f64,
    pub nc1: usize,
    pub nc2: usize,
    pub nc3: usize,
    pub n_total: usize,
    pub dc1: Option<f64>,
    pub dc2: Option<f64>,
    pub dc3: Option<f64>,
    pub band: Option<u8>,
    pub quality: Option<f64>,
    pub applicable: bool,
}

/// Classify every record, tally severities, derive densities and run the
/// profile function. An empty record set is not applicable.
pub fn evaluate_property(
    property_name: &str,
    metric: &str,
    weight: f64,
    records: &[MetricRecord],
    thresholds: &SeverityThresholds,
    bands: &ProfileBands,
) -> PropertyEvaluation {
    let (mut nc1, mut nc2, mut nc3) = (0, 0, 0);
    for record in records {
        match classify(record.value, thresholds) {
            Severity::Level1 => nc1 += 1,
            Severity::Level2 => nc2 += 1,
            Severity::Level3 => nc3 += 1,
        }
    }
    let mut eval = PropertyEvaluation {
        property_name: property_name.to_string(),
        metric: metric.to_string(),
        weight,
        nc1,
        nc2,
        nc3,
        n_total: records.len(),
        dc1: None,
        dc2: None,
        dc3: None,
        band: None,
        quality: None,
        applicable: false,
    };
    if let Ok(d) = compute_densities(nc1, nc2, nc3) {
        let score = profile_quality(d.dc1, d.dc2, bands);
        eval.dc1 = Some(d.dc1);
        eval.dc2 = Some(d.dc2);
        eval.dc3 = Some(d.dc3);
        eval.band = Some(score.band);
        eval.quality = Some(score.quality);
        eval.applicable = true;
    }
    eval
}
