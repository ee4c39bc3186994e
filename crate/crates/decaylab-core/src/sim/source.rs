//! Radioactive source: activity scaled by exponential decay of age.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-life of Co-60 in years.
pub const CO60_HALF_LIFE_YEARS: f64 = 5.3;
/// Half-life of Sr-90 in years.
pub const SR90_HALF_LIFE_YEARS: f64 = 29.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceModel {
    pub isotope_label: String,
    pub half_life_years: f64,
    /// Mean decays per second reaching the full sphere when the source was new.
    pub initial_rate_cps: f64,
    pub elapsed_time_years: f64,
}

impl SourceModel {
    pub fn new(
        isotope_label: impl Into<String>,
        half_life_years: f64,
        initial_rate_cps: f64,
        elapsed_time_years: f64,
    ) -> Result<Self> {
        if !(half_life_years > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "half_life_years must be positive, got {half_life_years}"
            )));
        }
        if !(initial_rate_cps > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "initial_rate_cps must be positive, got {initial_rate_cps}"
            )));
        }
        if elapsed_time_years < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "elapsed_time_years must be non-negative, got {elapsed_time_years}"
            )));
        }
        Ok(Self {
            isotope_label: isotope_label.into(),
            half_life_years,
            initial_rate_cps,
            elapsed_time_years,
        })
    }

    pub fn cobalt60(initial_rate_cps: f64, elapsed_time_years: f64) -> Result<Self> {
        Self::new("Co-60", CO60_HALF_LIFE_YEARS, initial_rate_cps, elapsed_time_years)
    }

    pub fn strontium90(initial_rate_cps: f64, elapsed_time_years: f64) -> Result<Self> {
        Self::new("Sr-90", SR90_HALF_LIFE_YEARS, initial_rate_cps, elapsed_time_years)
    }

    /// Present emission rate: initial rate halved once per elapsed half-life.
    pub fn effective_rate_cps(&self) -> f64 {
        self.initial_rate_cps * (-self.elapsed_time_years / self.half_life_years).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_half_life_halves_exactly() {
        let s = SourceModel::new("x", 5.3, 1000.0, 5.3).unwrap();
        assert_eq!(s.effective_rate_cps(), 500.0);
    }

    #[test]
    fn fresh_source_is_unattenuated() {
        let s = SourceModel::strontium90(1000.0, 0.0).unwrap();
        assert_eq!(s.effective_rate_cps(), 1000.0);
    }

    #[test]
    fn longer_half_life_retains_more_activity() {
        let co = SourceModel::cobalt60(1000.0, 10.0).unwrap();
        let sr = SourceModel::strontium90(1000.0, 10.0).unwrap();
        assert!(sr.effective_rate_cps() > co.effective_rate_cps());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SourceModel::new("x", 0.0, 1.0, 0.0).is_err());
        assert!(SourceModel::new("x", 1.0, 0.0, 0.0).is_err());
        assert!(SourceModel::new("x", 1.0, 1.0, -1.0).is_err());
    }
}
