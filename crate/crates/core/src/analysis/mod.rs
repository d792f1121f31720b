//! Checkers built on the exact engine: Lebesgue points, certified
//! discontinuities of `𝓜f`, grid scans of level sets, and neighborhood
//! searches around discontinuities.

mod lebesgue;
mod neighborhood;
mod scan;

use thiserror::Error;

use crate::rat::Rat;

pub use lebesgue::{
    certify, completeness_violations, discontinuities, high_side_samples, lebesgue_classify,
    DiscontinuityCertificate, LebesgueClass, Side, Verdict,
};
pub use neighborhood::{
    lemma3_check, lemma3_check_points, lemma3_default_eps, neighborhood_check_thm5,
    neighborhood_check_thm6, suffix_minima, Lemma3Point, RadiusWitness,
};
pub use scan::{
    band_extent, densities_non_increasing, grid_points, interior_zero_scan, level_density,
    level_density_series, scan, weak_type_check, zero_set_fraction, ScanEntry, ScanReport,
    WeakTypeReport, MAX_GRID_POINTS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not a certified discontinuity")]
    NotCertified(Rat),
    #[error("precondition fails: {0}")]
    Precondition(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> AnalysisError {
    AnalysisError::InvalidParameter(msg.into())
}
