//! Scenario orchestration for the decay RNG pipeline: presets mirroring
//! the half-life / preset-time / distance / plateau experiments, counter
//! export ingestion, report persistence, and plot-data emission.

pub mod error;
pub mod ingest;
pub mod plotdata;
pub mod report;
pub mod scenario;

pub use error::{HarnessError, Result};
pub use ingest::{ingest_counts, read_bits, write_bits, write_counts_csv, CountFormat};
pub use plotdata::emit_plot_data;
pub use report::{
    read_report, write_json, AnalysisReport, ArmReport, BalanceSummary, ComparisonReport,
    EntropySummary, PlateauSection, REPORT_SCHEMA,
};
pub use scenario::{run_scenario, ScenarioArm, ScenarioName, ScenarioSpec};
