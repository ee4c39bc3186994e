//! Simulation and statistical evaluation of a radioactive-decay random
//! number generator.
//!
//! The pipeline mirrors a desk experiment with a GM counter: a decaying
//! source behind a shelf geometry drives Poisson count acquisition
//! ([`sim`]), counts become bits by mean thresholding ([`postproc`]), and
//! the bits are screened by quick self-tests ([`selftest`]) and the full
//! SP 800-22 battery ([`nist`]).

pub mod bits;
pub mod counts;
mod error;
pub mod nist;
pub mod postproc;
pub mod report;
pub mod selftest;
pub mod sim;

pub use bits::{bit_balance, BitSequence};
pub use counts::CountSeries;
pub use error::{Error, Result};
pub use nist::{run_battery, BatteryConfig, TestId};
pub use postproc::{binarize_mean_threshold, ThresholdSummary};
pub use report::{TestReport, TestResult, DEFAULT_ALPHA};
pub use selftest::{
    default_window_size, entropy_profile, monobit_test, shannon_entropy, EntropyProfile,
};
pub use sim::{
    acquire, analyze_plateau, expected_noise_fraction, expected_rate, find_operating_voltage,
    plateau_scan, DetectorModel, ExperimentConfig, GeometryModel, PlateauAnalysis, PlateauPoint,
    SourceModel,
};
