//! Radiation count series with acquisition metadata.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered radiation counts, one per timed run, plus the acquisition
/// settings that produced them so downstream reports are self-describing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountSeries {
    counts: Vec<u64>,
    preset_time_s: f64,
    source_label: String,
    distance_cm: f64,
    applied_voltage_v: f64,
}

impl CountSeries {
    pub fn new(
        counts: Vec<u64>,
        preset_time_s: f64,
        source_label: impl Into<String>,
        distance_cm: f64,
        applied_voltage_v: f64,
    ) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoCounts);
        }
        if !(preset_time_s > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "preset_time_s must be positive, got {preset_time_s}"
            )));
        }
        if distance_cm < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "distance_cm must be non-negative, got {distance_cm}"
            )));
        }
        if !(applied_voltage_v > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "applied_voltage_v must be positive, got {applied_voltage_v}"
            )));
        }
        Ok(Self {
            counts,
            preset_time_s,
            source_label: source_label.into(),
            distance_cm,
            applied_voltage_v,
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of runs; always equal to the number of stored counts.
    pub fn run_count(&self) -> usize {
        self.counts.len()
    }

    pub fn preset_time_s(&self) -> f64 {
        self.preset_time_s
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn distance_cm(&self) -> f64 {
        self.distance_cm
    }

    pub fn applied_voltage_v(&self) -> f64 {
        self.applied_voltage_v
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn mean(&self) -> f64 {
        self.total() as f64 / self.counts.len() as f64
    }
}
