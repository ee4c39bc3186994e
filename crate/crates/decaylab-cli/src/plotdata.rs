//! Plot-data emission: one delimited text file per figure analogue, with
//! the column schema documented in a header line. Rendering is left to
//! external tooling.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use decaylab_core::{binarize_mean_threshold, default_window_size, entropy_profile, CountSeries};

use crate::error::{HarnessError, Result};
use crate::ingest::{ingest_counts, CountFormat};
use crate::report::ComparisonReport;

/// Writes the plot-data files for a scenario report into `out_dir`:
/// an entropy-vs-window-index series and a bit-frequency bar file per arm,
/// plus the voltage/count curve for plateau runs. Returns the paths
/// written. Per-window entropies are recomputed from the persisted counts,
/// so the files stay faithful to the sidecar data.
pub fn emit_plot_data(
    report: &ComparisonReport,
    report_dir: &Path,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let mut written = Vec::new();

    for arm in &report.arms {
        let series = ingest_counts(&report_dir.join(&arm.counts_file), CountFormat::PlainCsv)?;
        written.push(write_entropy_series(&series, &arm.label, out_dir)?);
        written.push(write_frequency_bars(arm, out_dir)?);
    }

    if let Some(plateau) = &report.plateau {
        let path = out_dir.join("plateau_curve.csv");
        let mut text = String::from("# voltage_v,counts\n");
        for p in plateau.points.iter().filter(|p| !p.beyond_breakdown) {
            let _ = writeln!(text, "{},{}", p.voltage_v, p.counts);
        }
        fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
        written.push(path);
    }

    Ok(written)
}

fn write_entropy_series(series: &CountSeries, label: &str, out_dir: &Path) -> Result<PathBuf> {
    let (bits, _) = binarize_mean_threshold(series)?;
    let profile = entropy_profile(&bits, default_window_size(bits.n_bits()), 1)?;
    let path = out_dir.join(format!("entropy_{label}.csv"));
    let mut text = String::from("# window_index,shannon_entropy\n");
    for (i, h) in profile.entropies.iter().enumerate() {
        let _ = writeln!(text, "{i},{h}");
    }
    fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    Ok(path)
}

fn write_frequency_bars(arm: &crate::report::ArmReport, out_dir: &Path) -> Result<PathBuf> {
    let path = out_dir.join(format!("frequency_{}.csv", arm.label));
    let mut text = String::from("# bit,fraction\n");
    let _ = writeln!(text, "0,{}", arm.balance.fraction_zeros);
    let _ = writeln!(text, "1,{}", arm.balance.fraction_ones);
    fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    Ok(path)
}
