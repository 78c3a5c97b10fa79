use serde::{Deserialize, Serialize};

/// Severity of a single artifact. Level 3 is the least severe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Level1,
    Level2,
    Level3,
}

impl Severity {
    pub fn level(self) -> u8 {
        match self {
            Severity::Level1 => 1,
            Severity::Level2 => 2,
            Severity::Level3 => 3,
        }
    }
}

/// Inclusive upper bounds of the two better ranges; higher values are worse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeverityThresholds {
    pub level3_max: f64,
    pub level2_max: f64,
}

impl SeverityThresholds {
    pub const fn new(level3_max: f64, level2_max: f64) -> Self {
        Self {
            level3_max,
            level2_max,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.level3_max.is_finite() && self.level2_max.is_finite()) {
            return Err("severity thresholds must be finite".into());
        }
        if self.level3_max >= self.level2_max {
            return Err(format!(
                "level3_max ({}) must be below level2_max ({})",
                self.level3_max, self.level2_max
            ));
        }
        Ok(())
    }
}

/// Boundary values fall into the better range. NaN lands in level 1.
pub fn classify(value: f64, thresholds: &SeverityThresholds) -> Severity {
    if value <= thresholds.level3_max {
        Severity::Level3
    } else if value <= thresholds.level2_max {
        Severity::Level2
    } else {
        Severity::Level1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDTH: SeverityThresholds = SeverityThresholds::new(8.0, 15.0);

    #[test]
    fn circuit_width_table() {
        assert_eq!(classify(1.0, &WIDTH), Severity::Level3);
        assert_eq!(classify(8.0, &WIDTH), Severity::Level3);
        assert_eq!(classify(9.0, &WIDTH), Severity::Level2);
        assert_eq!(classify(15.0, &WIDTH), Severity::Level2);
        assert_eq!(classify(16.0, &WIDTH), Severity::Level1);
        assert_eq!(classify(100.0, &WIDTH), Severity::Level1);
    }

    #[test]
    fn validation() {
        assert!(WIDTH.validate().is_ok());
        assert!(SeverityThresholds::new(5.0, 5.0).validate().is_err());
        assert!(SeverityThresholds::new(f64::NAN, 5.0).validate().is_err());
    }
}
