//! Monte Carlo model of the counting experiment: source decay, shelf
//! geometry, GM tube response, and Poisson acquisition.

mod detector;
mod geometry;
mod plateau;
mod source;

pub use detector::{DetectorModel, RISE_SPAN_V};
pub use geometry::GeometryModel;
pub use plateau::{analyze_plateau, find_operating_voltage, plateau_scan, PlateauAnalysis, PlateauPoint};
pub use source::{SourceModel, CO60_HALF_LIFE_YEARS, SR90_HALF_LIFE_YEARS};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::counts::CountSeries;
use crate::error::{Error, Result};

/// Everything that determines a simulated acquisition. Identical configs
/// (seed included) produce identical count series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: SourceModel,
    pub geometry: GeometryModel,
    pub detector: DetectorModel,
    pub preset_time_s: f64,
    pub run_count: usize,
    pub applied_voltage_v: f64,
    pub rng_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.detector.validate()?;
        if !(self.preset_time_s > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "preset_time_s must be positive, got {}",
                self.preset_time_s
            )));
        }
        if self.run_count == 0 {
            return Err(Error::InvalidConfig("run_count must be positive".into()));
        }
        if !(self.applied_voltage_v > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "applied_voltage_v must be positive, got {}",
                self.applied_voltage_v
            )));
        }
        Ok(())
    }
}

/// Mean detected rate in counts/second for a configuration, before dead time.
///
/// Signal: source emission rate, attenuated by age, times the solid-angle
/// acceptance and the voltage-dependent efficiency. Background: ambient rate
/// inflated with distance by the scatter coefficient. A tube below its
/// starting voltage registers neither; past breakdown this is an error.
pub fn expected_rate(cfg: &ExperimentConfig) -> Result<f64> {
    cfg.validate()?;
    let efficiency = cfg.detector.efficiency(cfg.applied_voltage_v)?;
    if efficiency == 0.0 {
        return Ok(0.0);
    }
    let signal = cfg.source.effective_rate_cps() * cfg.geometry.acceptance() * efficiency;
    let background = cfg.detector.background_cps * cfg.geometry.background_inflation();
    Ok(signal + background)
}

/// Expected signal-free fraction of the detected rate, background over total.
pub fn expected_noise_fraction(cfg: &ExperimentConfig) -> Result<f64> {
    let total = expected_rate(cfg)?;
    if total == 0.0 {
        return Ok(0.0);
    }
    let background = cfg.detector.background_cps * cfg.geometry.background_inflation();
    Ok(background / total)
}

/// Runs the configured acquisition: one Poisson draw per timed run at the
/// expected rate, reduced by the non-paralyzable dead time.
pub fn acquire(cfg: &ExperimentConfig) -> Result<CountSeries> {
    let rate = expected_rate(cfg)?;
    let lambda = rate * cfg.preset_time_s;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let counts = if lambda == 0.0 {
        vec![0u64; cfg.run_count]
    } else {
        let poisson = Poisson::new(lambda)
            .map_err(|e| Error::InvalidConfig(format!("invalid Poisson rate {lambda}: {e}")))?;
        (0..cfg.run_count)
            .map(|_| {
                let true_count = poisson.sample(&mut rng) as u64;
                cfg.detector.apply_dead_time(true_count, cfg.preset_time_s)
            })
            .collect()
    };

    CountSeries::new(
        counts,
        cfg.preset_time_s,
        cfg.source.isotope_label.clone(),
        cfg.geometry.distance_cm,
        cfg.applied_voltage_v,
    )
}
