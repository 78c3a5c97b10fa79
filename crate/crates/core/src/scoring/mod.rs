//! Evaluation calculus: per-artifact severity, severity densities, the
//! banded profile function, and the weighted analysability aggregate.

mod aggregate;
mod evaluate;
mod profile;
mod severity;

pub use aggregate::{aggregate, LevelCutPoints};
pub use evaluate::{
    compute_densities, evaluate_property, Densities, MetricRecord, PropertyEvaluation,
};
pub use profile::{profile_quality, ProfileBand, ProfileBands, ProfileScore};
pub use severity::{classify, Severity, SeverityThresholds};
