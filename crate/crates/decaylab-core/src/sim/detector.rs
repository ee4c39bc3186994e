//! GM tube model: voltage-dependent counting efficiency, background, and
//! non-paralyzable dead time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Width of the avalanche turn-on region below the knee, volts. The tube
/// registers nothing below `knee - RISE_SPAN_V` and counts at full plateau
/// efficiency from the knee upward.
pub const RISE_SPAN_V: f64 = 15.0;

/// Steepness of the logistic turn-on inside the rise span.
const RISE_STEEPNESS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    /// Non-paralyzable dead time, seconds.
    pub dead_time_s: f64,
    /// Onset of the plateau: the first voltage with stable full counting.
    pub knee_voltage_v: f64,
    /// Continuous-discharge threshold; counting is refused from here up.
    pub breakdown_voltage_v: f64,
    /// Relative count growth per 100 V inside the plateau. Not a true
    /// efficiency gain: it models the spurious counts that creep in as the
    /// voltage approaches breakdown, so the multiplier may exceed 1.
    pub plateau_slope_per_100v: f64,
    /// Fraction of geometrically accepted radiation actually counted at the
    /// knee.
    pub intrinsic_efficiency: f64,
    /// Ambient background at the tube, counts per second.
    pub background_cps: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self {
            dead_time_s: 1.0e-4,
            knee_voltage_v: 720.0,
            breakdown_voltage_v: 1200.0,
            plateau_slope_per_100v: 0.06,
            intrinsic_efficiency: 0.85,
            background_cps: 0.2,
        }
    }
}

impl DetectorModel {
    pub fn validate(&self) -> Result<()> {
        if self.dead_time_s < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "dead_time_s must be non-negative, got {}",
                self.dead_time_s
            )));
        }
        if !(self.knee_voltage_v > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "knee_voltage_v must be positive, got {}",
                self.knee_voltage_v
            )));
        }
        if self.breakdown_voltage_v <= self.knee_voltage_v {
            return Err(Error::InvalidConfig(format!(
                "breakdown_voltage_v ({}) must exceed knee_voltage_v ({})",
                self.breakdown_voltage_v, self.knee_voltage_v
            )));
        }
        if self.plateau_slope_per_100v < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "plateau_slope_per_100v must be non-negative, got {}",
                self.plateau_slope_per_100v
            )));
        }
        if !(self.intrinsic_efficiency > 0.0 && self.intrinsic_efficiency <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "intrinsic_efficiency must be in (0, 1], got {}",
                self.intrinsic_efficiency
            )));
        }
        if self.background_cps < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "background_cps must be non-negative, got {}",
                self.background_cps
            )));
        }
        Ok(())
    }

    /// Voltage below which no avalanche forms and nothing is counted.
    pub fn starting_voltage_v(&self) -> f64 {
        self.knee_voltage_v - RISE_SPAN_V
    }

    /// Counting-efficiency multiplier at an applied voltage.
    ///
    /// Zero below the starting voltage, a normalized logistic rise up to the
    /// knee, then a linear plateau of `plateau_slope_per_100v`. Voltages at
    /// or past breakdown are an error rather than a number.
    pub fn efficiency(&self, applied_voltage_v: f64) -> Result<f64> {
        if applied_voltage_v >= self.breakdown_voltage_v {
            return Err(Error::BreakdownRegion {
                applied_v: applied_voltage_v,
                breakdown_v: self.breakdown_voltage_v,
            });
        }
        let start = self.starting_voltage_v();
        if applied_voltage_v <= start {
            return Ok(0.0);
        }
        if applied_voltage_v < self.knee_voltage_v {
            let t = (applied_voltage_v - start) / RISE_SPAN_V;
            return Ok(self.intrinsic_efficiency * logistic_unit(t));
        }
        let over = applied_voltage_v - self.knee_voltage_v;
        Ok(self.intrinsic_efficiency * (1.0 + self.plateau_slope_per_100v * over / 100.0))
    }

    /// Whether the tube counts at all at this voltage (still errors at
    /// breakdown).
    pub fn is_live(&self, applied_voltage_v: f64) -> Result<bool> {
        Ok(self.efficiency(applied_voltage_v)? > 0.0)
    }

    /// Non-paralyzable dead-time reduction of one timed count: with true
    /// count k over a window of t seconds, the observed count is
    /// m = k / (1 + (k/t) * tau), rounded to nearest (ties to even).
    pub fn apply_dead_time(&self, true_count: u64, preset_time_s: f64) -> u64 {
        if self.dead_time_s == 0.0 || true_count == 0 {
            return true_count;
        }
        let k = true_count as f64;
        let observed = k / (1.0 + (k / preset_time_s) * self.dead_time_s);
        observed.round_ties_even() as u64
    }
}

/// Logistic curve rescaled to hit exactly 0 at t = 0 and 1 at t = 1.
fn logistic_unit(t: f64) -> f64 {
    let sig = |v: f64| 1.0 / (1.0 + (-v).exp());
    let lo = sig(-RISE_STEEPNESS / 2.0);
    let hi = sig(RISE_STEEPNESS / 2.0);
    (sig(RISE_STEEPNESS * (t - 0.5)) - lo) / (hi - lo)
}
