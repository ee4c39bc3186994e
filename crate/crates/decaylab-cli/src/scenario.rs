//! Scenario presets and the end-to-end pipeline: acquire (or read) counts,
//! binarize, self-test, run the battery, persist everything.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use decaylab_core::{
    acquire, binarize_mean_threshold, default_window_size, entropy_profile,
    find_operating_voltage, monobit_test, plateau_scan, run_battery, BatteryConfig, CountSeries,
    DetectorModel, ExperimentConfig, GeometryModel, SourceModel,
};

use crate::error::{HarnessError, Result};
use crate::ingest::{write_bits, write_counts_csv};
use crate::report::{
    write_json, ArmReport, BalanceSummary, ComparisonReport, EntropySummary, PlateauSection,
    REPORT_SCHEMA,
};

/// Initial emission rate shared by the preset sources, counts/second.
pub const PRESET_SOURCE_RATE_CPS: f64 = 7700.0;
/// Age of the preset sources, years.
pub const PRESET_SOURCE_AGE_YEARS: f64 = 10.0;
/// Detector window radius used by the shelf presets, centimetres.
pub const PRESET_WINDOW_RADIUS_CM: f64 = 0.7;
/// Scatter growth of background with distance used by the presets, per cm.
pub const PRESET_SCATTER_COEFF: f64 = 0.5;
/// Operating voltage used by the counting presets.
pub const PRESET_VOLTAGE_V: f64 = 900.0;

/// Plateau sweep bounds mirroring a 700..1140 V, 20 V step scan.
pub const PLATEAU_V_START: f64 = 700.0;
pub const PLATEAU_V_STEP: f64 = 20.0;
pub const PLATEAU_STEPS: usize = 23;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioName {
    HalfLifeComparison,
    PresetTimeComparison,
    DistanceComparison,
    PlateauScan,
    Custom,
}

impl ScenarioName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HalfLifeComparison => "half_life_comparison",
            Self::PresetTimeComparison => "preset_time_comparison",
            Self::DistanceComparison => "distance_comparison",
            Self::PlateauScan => "plateau_scan",
            Self::Custom => "custom",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "half_life_comparison" => Some(Self::HalfLifeComparison),
            "preset_time_comparison" => Some(Self::PresetTimeComparison),
            "distance_comparison" => Some(Self::DistanceComparison),
            "plateau_scan" => Some(Self::PlateauScan),
            "custom" => Some(Self::Custom),
            _ => None,
        }
    }
}

/// One labelled experiment arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioArm {
    pub label: String,
    pub config: ExperimentConfig,
}

/// A fully specified scenario run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: ScenarioName,
    pub arms: Vec<ScenarioArm>,
    pub target_counts: usize,
    pub report_path: PathBuf,
    /// Directory for sidecar count/bit/scan files.
    pub out_dir: PathBuf,
}

fn preset_geometry(distance_cm: f64) -> GeometryModel {
    GeometryModel::new(distance_cm, PRESET_WINDOW_RADIUS_CM, PRESET_SCATTER_COEFF)
        .expect("preset geometry is valid")
}

fn preset_config(source: SourceModel, distance_cm: f64, preset_time_s: f64) -> ExperimentConfig {
    ExperimentConfig {
        source,
        geometry: preset_geometry(distance_cm),
        detector: DetectorModel::default(),
        preset_time_s,
        run_count: 0, // filled in by the preset builder
        applied_voltage_v: PRESET_VOLTAGE_V,
        rng_seed: 0,
    }
}

fn sr90() -> SourceModel {
    SourceModel::strontium90(PRESET_SOURCE_RATE_CPS, PRESET_SOURCE_AGE_YEARS)
        .expect("preset source is valid")
}

fn co60() -> SourceModel {
    SourceModel::cobalt60(PRESET_SOURCE_RATE_CPS, PRESET_SOURCE_AGE_YEARS)
        .expect("preset source is valid")
}

/// Seeds per arm are spaced off the base seed so arms draw independent
/// streams while the whole scenario stays a function of one seed.
fn arm_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

impl ScenarioSpec {
    /// Two sources of different half-life, same shelf position and timing.
    pub fn half_life_comparison(seed: u64, out_dir: &Path) -> Self {
        Self::comparison(
            ScenarioName::HalfLifeComparison,
            seed,
            out_dir,
            [("co60", co60(), 2.0, 1.0), ("sr90", sr90(), 2.0, 1.0)],
        )
    }

    /// Same source and position, 1 s versus 5 s preset time.
    pub fn preset_time_comparison(seed: u64, out_dir: &Path) -> Self {
        Self::comparison(
            ScenarioName::PresetTimeComparison,
            seed,
            out_dir,
            [("1s", sr90(), 2.0, 1.0), ("5s", sr90(), 2.0, 5.0)],
        )
    }

    /// Same source and timing, second versus fourth shelf position.
    pub fn distance_comparison(seed: u64, out_dir: &Path) -> Self {
        Self::comparison(
            ScenarioName::DistanceComparison,
            seed,
            out_dir,
            [("2cm", sr90(), 2.0, 1.0), ("4cm", sr90(), 4.0, 1.0)],
        )
    }

    fn comparison(
        name: ScenarioName,
        seed: u64,
        out_dir: &Path,
        arms: [(&str, SourceModel, f64, f64); 2],
    ) -> Self {
        let target_counts = 5000;
        let arms = arms
            .into_iter()
            .enumerate()
            .map(|(i, (label, source, distance, preset))| {
                let mut config = preset_config(source, distance, preset);
                config.run_count = target_counts;
                config.rng_seed = arm_seed(seed, i);
                ScenarioArm {
                    label: label.to_string(),
                    config,
                }
            })
            .collect();
        Self {
            name,
            arms,
            target_counts,
            report_path: out_dir.join("report.json"),
            out_dir: out_dir.to_path_buf(),
        }
    }

    /// Voltage sweep preset: a 30 s Co-60 acquisition per 20 V step.
    pub fn plateau_scan(seed: u64, out_dir: &Path) -> Self {
        let mut config = preset_config(co60(), 2.5, 30.0);
        config.run_count = 1;
        config.rng_seed = seed;
        Self {
            name: ScenarioName::PlateauScan,
            arms: vec![ScenarioArm {
                label: "scan".to_string(),
                config,
            }],
            target_counts: 1,
            report_path: out_dir.join("report.json"),
            out_dir: out_dir.to_path_buf(),
        }
    }

    pub fn preset(name: ScenarioName, seed: u64, out_dir: &Path) -> Result<Self> {
        match name {
            ScenarioName::HalfLifeComparison => Ok(Self::half_life_comparison(seed, out_dir)),
            ScenarioName::PresetTimeComparison => Ok(Self::preset_time_comparison(seed, out_dir)),
            ScenarioName::DistanceComparison => Ok(Self::distance_comparison(seed, out_dir)),
            ScenarioName::PlateauScan => Ok(Self::plateau_scan(seed, out_dir)),
            ScenarioName::Custom => Err(HarnessError::Scenario(
                "custom scenarios are built from explicit configs, not a preset".into(),
            )),
        }
    }

    /// Comparison scenarios must hold exactly two arms that differ in one
    /// modelled parameter (seeds aside).
    pub fn validate(&self) -> Result<()> {
        if self.arms.is_empty() {
            return Err(HarnessError::Scenario("scenario has no arms".into()));
        }
        for arm in &self.arms {
            arm.config.validate()?;
        }
        let is_comparison = matches!(
            self.name,
            ScenarioName::HalfLifeComparison
                | ScenarioName::PresetTimeComparison
                | ScenarioName::DistanceComparison
        );
        if is_comparison {
            if self.arms.len() != 2 {
                return Err(HarnessError::Scenario(format!(
                    "{} needs exactly 2 arms, got {}",
                    self.name.as_str(),
                    self.arms.len()
                )));
            }
            let differing = differing_parameters(&self.arms[0].config, &self.arms[1].config);
            if differing.len() != 1 {
                return Err(HarnessError::Scenario(format!(
                    "comparison arms must differ in exactly one modelled parameter, found: {}",
                    if differing.is_empty() {
                        "none".to_string()
                    } else {
                        differing.join(", ")
                    }
                )));
            }
        }
        Ok(())
    }
}

/// Names of modelled parameters (seed excluded) on which two configs differ.
fn differing_parameters(a: &ExperimentConfig, b: &ExperimentConfig) -> Vec<&'static str> {
    let mut out = Vec::new();
    if a.source != b.source {
        out.push("source");
    }
    if a.geometry.distance_cm != b.geometry.distance_cm {
        out.push("distance_cm");
    }
    if (a.geometry.window_radius_cm, a.geometry.scatter_noise_coeff)
        != (b.geometry.window_radius_cm, b.geometry.scatter_noise_coeff)
    {
        out.push("geometry");
    }
    if a.detector != b.detector {
        out.push("detector");
    }
    if a.preset_time_s != b.preset_time_s {
        out.push("preset_time_s");
    }
    if a.applied_voltage_v != b.applied_voltage_v {
        out.push("applied_voltage_v");
    }
    if a.run_count != b.run_count {
        out.push("run_count");
    }
    out
}

/// Evaluates one count series into an [`ArmReport`] (files not yet named).
pub fn evaluate_arm(
    label: &str,
    config: &ExperimentConfig,
    series: &CountSeries,
    alpha: f64,
) -> Result<(ArmReport, decaylab_core::BitSequence)> {
    let (bits, threshold) = binarize_mean_threshold(series)?;
    let window = default_window_size(bits.n_bits());
    let profile = entropy_profile(&bits, window, 1)?;
    let monobit = monobit_test(&bits)?;
    let battery_cfg = BatteryConfig {
        alpha,
        ..BatteryConfig::recommended_for(bits.n_bits())
    };
    let battery = run_battery(&bits, &battery_cfg)?;
    let report = ArmReport {
        label: label.to_string(),
        config: config.clone(),
        threshold,
        balance: BalanceSummary::of(&bits)?,
        entropy: EntropySummary::from(&profile),
        monobit,
        battery,
        counts_file: String::new(),
        bits_file: String::new(),
    };
    Ok((report, bits))
}

fn comparison_verdicts(scenario: &str, arms: &[ArmReport]) -> Vec<String> {
    let mut verdicts = Vec::new();
    if arms.len() == 2 {
        let (a, b) = (&arms[0], &arms[1]);
        let (hi, lo) = if a.entropy.mean_entropy >= b.entropy.mean_entropy {
            (a, b)
        } else {
            (b, a)
        };
        verdicts.push(format!(
            "mean sliding-window entropy: arm '{}' {:.4}% >= arm '{}' {:.4}%",
            hi.label,
            hi.entropy.mean_entropy_pct,
            lo.label,
            lo.entropy.mean_entropy_pct
        ));
        let (bal_hi, bal_lo) = if balance_gap(a) <= balance_gap(b) {
            (a, b)
        } else {
            (b, a)
        };
        verdicts.push(format!(
            "zero/one balance: arm '{}' deviates {:.4} from 1/2, arm '{}' {:.4}",
            bal_hi.label,
            balance_gap(bal_hi),
            bal_lo.label,
            balance_gap(bal_lo)
        ));
        for arm in arms {
            verdicts.push(format!(
                "battery: arm '{}' passed {}/{} applicable tests ({:.1}%)",
                arm.label,
                arm.battery.passed_count(),
                arm.battery.applicable_count(),
                arm.battery.pass_fraction * 100.0
            ));
        }
        let _ = scenario;
    }
    verdicts
}

fn balance_gap(arm: &ArmReport) -> f64 {
    (arm.balance.fraction_ones - 0.5).abs()
}

/// Runs a scenario end to end and persists counts, bits, scan data, and
/// the report. Arms that fail leave earlier arms' artifacts in place.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ComparisonReport> {
    spec.validate()?;
    fs::create_dir_all(&spec.out_dir).map_err(|e| HarnessError::io(&spec.out_dir, e))?;

    let scenario = spec.name.as_str();
    let mut arms = Vec::new();
    let mut plateau = None;

    if spec.name == ScenarioName::PlateauScan {
        let config = &spec.arms[0].config;
        let points = plateau_scan(config, PLATEAU_V_START, PLATEAU_V_STEP, PLATEAU_STEPS)?;
        let operating_voltage_v = find_operating_voltage(&points)?;
        let scan_file = format!("{scenario}_scan.csv");
        write_scan_csv(&points, &spec.out_dir.join(&scan_file))?;
        plateau = Some(PlateauSection {
            points,
            operating_voltage_v,
            scan_file,
        });
    } else {
        for arm in &spec.arms {
            let series = acquire(&arm.config)?;
            let (mut report, bits) = evaluate_arm(&arm.label, &arm.config, &series, 0.01)?;
            report.counts_file = format!("{scenario}_{}_counts.csv", arm.label);
            report.bits_file = format!("{scenario}_{}_bits.txt", arm.label);
            write_counts_csv(&series, &spec.out_dir.join(&report.counts_file))?;
            write_bits(&bits, &spec.out_dir.join(&report.bits_file))?;
            arms.push(report);
        }
    }

    let verdicts = match &plateau {
        Some(section) => vec![format!(
            "operating voltage {} V chosen from the plateau",
            section.operating_voltage_v
        )],
        None => comparison_verdicts(scenario, &arms),
    };

    let report = ComparisonReport {
        schema: REPORT_SCHEMA.to_string(),
        scenario: scenario.to_string(),
        target_counts: spec.target_counts,
        arms,
        plateau,
        verdicts,
    };
    write_json(&report, &spec.report_path)?;
    Ok(report)
}

pub fn write_scan_csv(points: &[decaylab_core::PlateauPoint], path: &Path) -> Result<()> {
    use std::fmt::Write as _;
    let mut out = String::from("# voltage_v,counts,beyond_breakdown\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.voltage_v, p.counts, p.beyond_breakdown);
    }
    fs::write(path, out).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        let dir = Path::new("/tmp/unused");
        for name in [
            ScenarioName::HalfLifeComparison,
            ScenarioName::PresetTimeComparison,
            ScenarioName::DistanceComparison,
            ScenarioName::PlateauScan,
        ] {
            let spec = ScenarioSpec::preset(name, 1, dir).unwrap();
            spec.validate().unwrap();
        }
    }

    #[test]
    fn comparison_arms_differ_in_exactly_one_parameter() {
        let dir = Path::new("/tmp/unused");
        let spec = ScenarioSpec::preset_time_comparison(1, dir);
        let diff = differing_parameters(&spec.arms[0].config, &spec.arms[1].config);
        assert_eq!(diff, vec!["preset_time_s"]);

        let spec = ScenarioSpec::distance_comparison(1, dir);
        let diff = differing_parameters(&spec.arms[0].config, &spec.arms[1].config);
        assert_eq!(diff, vec!["distance_cm"]);

        let spec = ScenarioSpec::half_life_comparison(1, dir);
        let diff = differing_parameters(&spec.arms[0].config, &spec.arms[1].config);
        assert_eq!(diff, vec!["source"]);
    }

    #[test]
    fn mangled_comparison_is_rejected() {
        let dir = Path::new("/tmp/unused");
        let mut spec = ScenarioSpec::distance_comparison(1, dir);
        spec.arms[1].config.preset_time_s = 5.0; // now two parameters differ
        assert!(matches!(
            spec.validate(),
            Err(HarnessError::Scenario(_))
        ));
    }

    #[test]
    fn arm_seeds_are_distinct() {
        assert_ne!(arm_seed(7, 0), arm_seed(7, 1));
        assert_eq!(arm_seed(7, 0), 7);
    }
}
