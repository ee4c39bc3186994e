//! Persisted report documents. Everything is plain serde structs written
//! as pretty JSON with a schema tag; identical inputs serialize to
//! byte-identical documents (no timestamps, no maps, no absolute paths).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use decaylab_core::{
    bit_balance, BitSequence, EntropyProfile, ExperimentConfig, PlateauPoint, TestReport,
    TestResult, ThresholdSummary,
};

use crate::error::{HarnessError, Result};

pub const REPORT_SCHEMA: &str = "decaylab_report_v1";

/// Zero/one balance of a bit stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceSummary {
    pub fraction_zeros: f64,
    pub fraction_ones: f64,
}

impl BalanceSummary {
    pub fn of(bits: &BitSequence) -> Result<Self> {
        let (fraction_zeros, fraction_ones) = bit_balance(bits)?;
        Ok(Self {
            fraction_zeros,
            fraction_ones,
        })
    }
}

/// Sliding-window entropy, reduced to what reports need; the full
/// per-window series goes to the plot-data files instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySummary {
    pub window_size: usize,
    pub stride: usize,
    pub n_windows: usize,
    pub mean_entropy: f64,
    /// Mean entropy expressed as the percentage figure used in tables.
    pub mean_entropy_pct: f64,
}

impl From<&EntropyProfile> for EntropySummary {
    fn from(profile: &EntropyProfile) -> Self {
        Self {
            window_size: profile.window_size,
            stride: profile.stride,
            n_windows: profile.n_windows(),
            mean_entropy: profile.mean_entropy,
            mean_entropy_pct: profile.mean_entropy * 100.0,
        }
    }
}

/// Full evaluation of one experiment arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmReport {
    pub label: String,
    pub config: ExperimentConfig,
    pub threshold: ThresholdSummary,
    pub balance: BalanceSummary,
    pub entropy: EntropySummary,
    pub monobit: TestResult,
    pub battery: TestReport,
    /// Sidecar file names (relative to the report's directory).
    pub counts_file: String,
    pub bits_file: String,
}

/// Voltage sweep section for plateau scenarios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateauSection {
    pub points: Vec<PlateauPoint>,
    pub operating_voltage_v: f64,
    pub scan_file: String,
}

/// Top-level scenario report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema: String,
    pub scenario: String,
    pub target_counts: usize,
    pub arms: Vec<ArmReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plateau: Option<PlateauSection>,
    /// Ordered textual conclusions, all recomputable from the arm metrics.
    pub verdicts: Vec<String>,
}

/// Standalone report for `analyze` and `battery` runs on existing data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input_file: String,
    pub source_label: String,
    pub preset_time_s: f64,
    pub distance_cm: f64,
    pub applied_voltage_v: f64,
    pub threshold: ThresholdSummary,
    pub balance: BalanceSummary,
    pub entropy: EntropySummary,
    pub monobit: TestResult,
    pub battery: TestReport,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

pub fn read_report(path: &Path) -> Result<ComparisonReport> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}
