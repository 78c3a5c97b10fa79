use serde::{Deserialize, Serialize};

/// One row of a profile function: the maximum accepted level-1 and level-2
/// densities (percent) and the quality interval the row maps to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileBand {
    pub t1: f64,
    pub t2: f64,
    pub quality_low: f64,
    pub quality_high: f64,
}

/// Bands 1..=4, best last. Band 0 is implicit and scores 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProfileBands(pub [ProfileBand; 4]);

impl ProfileBands {
    /// Circuit-width profile function.
    pub const CIRCUIT_WIDTH: ProfileBands = ProfileBands([
        ProfileBand {
            t1: 20.0,
            t2: 40.0,
            quality_low: 0.0,
            quality_high: 33.0,
        },
        ProfileBand {
            t1: 15.0,
            t2: 30.0,
            quality_low: 33.0,
            quality_high: 66.0,
        },
        ProfileBand {
            t1: 10.0,
            t2: 20.0,
            quality_low: 66.0,
            quality_high: 100.0,
        },
        ProfileBand {
            t1: 7.0,
            t2: 15.0,
            quality_low: 100.0,
            quality_high: 100.0,
        },
    ]);

    /// Row for band `b` in `1..=4`.
    pub fn band(&self, b: u8) -> &ProfileBand {
        &self.0[usize::from(b) - 1]
    }

    pub fn validate(&self) -> Result<(), String> {
        for pair in self.0.windows(2) {
            if !(pair[1].t1 < pair[0].t1 && pair[1].t2 < pair[0].t2) {
                return Err(
                    "profile thresholds must strictly decrease from band 1 to band 4".into(),
                );
            }
        }
        if self
            .0
            .iter()
            .any(|b| !(b.t1.is_finite() && b.t2.is_finite()))
        {
            return Err("profile thresholds must be finite".into());
        }
        let best = &self.0[3];
        if best.quality_low != 100.0 || best.quality_high != 100.0 {
            return Err("band 4 must map to quality 100".into());
        }
        let mut floor = 0.0;
        for (i, b) in self.0[..3].iter().enumerate() {
            if !(b.quality_low >= floor
                && b.quality_low < b.quality_high
                && b.quality_high <= 100.0)
            {
                return Err(format!(
                    "band {} quality interval [{}, {}) must be ascending within [0, 100]",
                    i + 1,
                    b.quality_low,
                    b.quality_high
                ));
            }
            floor = b.quality_high;
        }
        Ok(())
    }
}

/// Outcome of the profile function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileScore {
    pub band: u8,
    pub quality: f64,
}

/// Picks the best band whose level-1 and level-2 maxima both admit the
/// densities, then places the quality inside that band's interval by the
/// smaller remaining slack towards the next band's thresholds.
pub fn profile_quality(dc1: f64, dc2: f64, bands: &ProfileBands) -> ProfileScore {
    let band = (1..=4u8)
        .rev()
        .find(|&b| {
            let row = bands.band(b);
            dc1 <= row.t1 && dc2 <= row.t2
        })
        .unwrap_or(0);
    let quality = match band {
        0 => 0.0,
        4 => 100.0,
        b => {
            let row = bands.band(b);
            let next = bands.band(b + 1);
            let slack = |t: f64, t_next: f64, dc: f64| ((t - dc) / (t - t_next)).clamp(0.0, 1.0);
            let s = slack(row.t1, next.t1, dc1).min(slack(row.t2, next.t2, dc2));
            row.quality_low + s * (row.quality_high - row.quality_low)
        }
    };
    ProfileScore { band, quality }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: ProfileBands = ProfileBands::CIRCUIT_WIDTH;

    #[test]
    fn defaults_are_valid() {
        assert!(B.validate().is_ok());
    }

    #[test]
    fn table_corners() {
        assert_eq!(
            profile_quality(5.0, 10.0, &B),
            ProfileScore {
                band: 4,
                quality: 100.0
            }
        );
        assert_eq!(
            profile_quality(7.0, 15.0, &B),
            ProfileScore {
                band: 4,
                quality: 100.0
            }
        );
        assert_eq!(
            profile_quality(25.0, 50.0, &B),
            ProfileScore {
                band: 0,
                quality: 0.0
            }
        );
        assert_eq!(profile_quality(20.01, 40.0, &B).band, 0);
        assert_eq!(profile_quality(20.0, 40.0, &B).band, 1);
        assert_eq!(profile_quality(15.0, 30.0, &B).band, 2);
        assert_eq!(profile_quality(10.0, 20.0, &B).band, 3);
    }

    #[test]
    fn interpolation_worked_example() {
        let s = profile_quality(8.0, 16.0, &B);
        assert_eq!(s.band, 3);
        // min(2/3, 4/5) of the way from 66 to 100
        assert!((s.quality - (66.0 + 34.0 * 2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn band_lower_corner_is_interval_floor() {
        assert_eq!(profile_quality(20.0, 40.0, &B).quality, 0.0);
        assert_eq!(profile_quality(15.0, 30.0, &B).quality, 33.0);
        assert_eq!(profile_quality(10.0, 20.0, &B).quality, 66.0);
    }

    #[test]
    fn one_dimension_limits_quality() {
        // dc1 already good enough for band 4, dc2 only for band 3.
        let s = profile_quality(0.0, 17.5, &B);
        assert_eq!(s.band, 3);
        assert!((s.quality - 83.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_non_decreasing() {
        let mut bad = B;
        bad.0[2].t1 = 16.0;
        assert!(bad.validate().is_err());
        let mut bad = B;
        bad.0[3].quality_low = 90.0;
        assert!(bad.validate().is_err());
        let mut bad = B;
        bad.0[1].quality_low = 20.0;
        assert!(bad.validate().is_err());
    }
}
