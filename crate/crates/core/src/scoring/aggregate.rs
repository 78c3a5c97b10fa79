use serde::{Deserialize, Serialize};

use super::evaluate::PropertyEvaluation;
use crate::error::ScoringError;

/// Four ascending boundaries splitting 0..=100 into analysability levels 1..=5.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LevelCutPoints(pub [f64; 4]);

impl Default for LevelCutPoints {
    fn default() -> Self {
        LevelCutPoints([20.0, 40.0, 60.0, 80.0])
    }
}

impl LevelCutPoints {
    pub fn validate(&self) -> Result<(), String> {
        let ascending = self.0.windows(2).all(|w| w[0] < w[1]);
        let inside = self.0.iter().all(|c| *c > 0.0 && *c < 100.0);
        if ascending && inside {
            Ok(())
        } else {
            Err(format!(
                "level cut-points {:?} must be strictly ascending inside (0, 100)",
                self.0
            ))
        }
    }

    /// 1 + the number of cut-points at or below `value`.
    pub fn level(&self, value: f64) -> u8 {
        1 + self.0.iter().filter(|c| **c <= value).count() as u8
    }
}

/// Weighted mean of applicable property qualities and its level.
pub fn aggregate(
    evaluations: &[PropertyEvaluation],
    cut_points: &LevelCutPoints,
) -> Result<(f64, u8), ScoringError> {
    let (weighted, total_weight) = evaluations
        .iter()
        .filter(|e| e.applicable && e.weight > 0.0)
        .filter_map(|e| e.quality.map(|q| (q, e.weight)))
        .fold((0.0, 0.0), |(sum, w), (q, weight)| {
            (sum + weight * q, w + weight)
        });
    if total_weight <= 0.0 {
        return Err(ScoringError::NoApplicableProperties);
    }
    let value = (weighted / total_weight).clamp(0.0, 100.0);
    Ok((value, cut_points.level(value)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(quality: Option<f64>, weight: f64) -> PropertyEvaluation {
        PropertyEvaluation {
            property_name: "p".into(),
            metric: "m".into(),
            weight,
            nc1: 0,
            nc2: 0,
            nc3: usize::from(quality.is_some()),
            n_total: usize::from(quality.is_some()),
            dc1: None,
            dc2: None,
            dc3: None,
            band: None,
            quality,
            applicable: quality.is_some(),
        }
    }

    #[test]
    fn levels() {
        let cuts = LevelCutPoints::default();
        let levels: Vec<u8> = [0.0, 19.99, 20.0, 39.9, 40.0, 60.0, 79.0, 80.0, 100.0]
            .iter()
            .map(|v| cuts.level(*v))
            .collect();
        assert_eq!(levels, vec![1, 1, 2, 2, 3, 4, 4, 5, 5]);
    }

    #[test]
    fn constant_qualities() {
        let cuts = LevelCutPoints::default();
        assert_eq!(
            aggregate(&[eval(Some(100.0), 1.0), eval(Some(100.0), 2.0)], &cuts),
            Ok((100.0, 5))
        );
        assert_eq!(
            aggregate(&[eval(Some(0.0), 1.0), eval(Some(0.0), 1.0)], &cuts),
            Ok((0.0, 1))
        );
    }

    #[test]
    fn weighted_mean() {
        let cuts = LevelCutPoints::default();
        assert_eq!(
            aggregate(&[eval(Some(100.0), 1.0), eval(Some(60.0), 3.0)], &cuts),
            Ok((70.0, 4))
        );
    }

    #[test]
    fn inapplicable_and_zero_weight_are_ignored() {
        let cuts = LevelCutPoints::default();
        assert_eq!(
            aggregate(
                &[
                    eval(None, 5.0),
                    eval(Some(10.0), 0.0),
                    eval(Some(50.0), 1.0)
                ],
                &cuts
            ),
            Ok((50.0, 3))
        );
        assert_eq!(
            aggregate(&[eval(None, 1.0)], &cuts),
            Err(ScoringError::NoApplicableProperties)
        );
        assert_eq!(
            aggregate(&[], &cuts),
            Err(ScoringError::NoApplicableProperties)
        );
    }

    #[test]
    fn cut_point_validation() {
        assert!(LevelCutPoints::default().validate().is_ok());
        assert!(LevelCutPoints([20.0, 20.0, 60.0, 80.0]).validate().is_err());
        assert!(LevelCutPoints([0.0, 20.0, 60.0, 80.0]).validate().is_err());
    }
}
