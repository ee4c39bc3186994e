//! Voltage sweep over the tube and operating-voltage selection from the
//! resulting count curve.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::{expected_rate, ExperimentConfig};
use crate::error::{Error, Result};

/// One step of a voltage scan: a single timed count at that voltage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateauPoint {
    pub voltage_v: f64,
    pub counts: u64,
    /// Set when the voltage is at or past breakdown; the point is kept in
    /// the scan (with zero counts) rather than silently dropped.
    pub beyond_breakdown: bool,
}

/// Maximum relative count change per 100 V tolerated inside the plateau.
pub const PLATEAU_SLOPE_LIMIT_PER_100V: f64 = 0.15;

/// Knee detection: first scan point reaching this fraction of the maximum.
pub const KNEE_FRACTION: f64 = 0.5;

/// Sweeps the applied voltage, recording one preset-time count per step
/// with everything else held fixed.
pub fn plateau_scan(
    cfg: &ExperimentConfig,
    v_start: f64,
    v_step: f64,
    n_steps: usize,
) -> Result<Vec<PlateauPoint>> {
    if !(v_step > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "v_step must be positive, got {v_step}"
        )));
    }
    if n_steps < 3 {
        return Err(Error::InvalidConfig(format!(
            "plateau scan needs at least 3 steps, got {n_steps}"
        )));
    }
    cfg.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut points = Vec::with_capacity(n_steps);
    for step in 0..n_steps {
        let voltage_v = v_start + step as f64 * v_step;
        if voltage_v >= cfg.detector.breakdown_voltage_v {
            points.push(PlateauPoint {
                voltage_v,
                counts: 0,
                beyond_breakdown: true,
            });
            continue;
        }
        let mut at_v = cfg.clone();
        at_v.applied_voltage_v = voltage_v;
        let lambda = expected_rate(&at_v)? * cfg.preset_time_s;
        let counts = if lambda == 0.0 {
            0
        } else {
            let poisson = Poisson::new(lambda)
                .map_err(|e| Error::InvalidConfig(format!("invalid Poisson rate {lambda}: {e}")))?;
            poisson.sample(&mut rng) as u64
        };
        points.push(PlateauPoint {
            voltage_v,
            counts,
            beyond_breakdown: false,
        });
    }
    Ok(points)
}

/// Knee, plateau bounds, and chosen operating voltage of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateauAnalysis {
    pub knee_voltage_v: f64,
    pub plateau_start_v: f64,
    pub plateau_end_v: f64,
    pub operating_voltage_v: f64,
}

/// Picks the operating voltage from a scan: the scanned voltage nearest the
/// midpoint of the plateau.
pub fn find_operating_voltage(scan: &[PlateauPoint]) -> Result<f64> {
    Ok(analyze_plateau(scan)?.operating_voltage_v)
}

/// Locates the knee and plateau of a scan.
///
/// The knee is the first usable point whose count reaches half the scan
/// maximum. From the knee the plateau extends while the count drift stays
/// within 15% per 100 V, measured between each point and the first point at
/// least 100 V above it (consecutive points, rate-normalized, when the scan
/// is too short to span 100 V). Single-point plateaus are rejected.
pub fn analyze_plateau(scan: &[PlateauPoint]) -> Result<PlateauAnalysis> {
    let usable: Vec<&PlateauPoint> = scan.iter().filter(|p| !p.beyond_breakdown).collect();
    if usable.iter().filter(|p| p.counts > 0).count() < 3 {
        return Err(Error::InvalidConfig(
            "plateau detection needs at least 3 non-zero scan points".into(),
        ));
    }

    let max_counts = usable.iter().map(|p| p.counts).max().unwrap_or(0);
    let knee_threshold = KNEE_FRACTION * max_counts as f64;
    let knee_idx = usable
        .iter()
        .position(|p| p.counts as f64 >= knee_threshold)
        .ok_or(Error::NoPlateau)?;

    // Slope checkpoints: pair each point with the first one >= 100 V above;
    // fall back to adjacent pairs when the scan never spans that far.
    let long_span_possible =
        usable.last().unwrap().voltage_v - usable[knee_idx].voltage_v >= 100.0;

    let mut plateau_end = usable.len() - 1;
    let mut violated_immediately = false;
    for i in knee_idx..usable.len() - 1 {
        let here = usable[i];
        let checkpoint = if long_span_possible {
            match usable[i + 1..]
                .iter()
                .find(|p| p.voltage_v - here.voltage_v >= 100.0)
            {
                Some(p) => p,
                None => break, // tail closer than 100 V stays in the plateau
            }
        } else {
            usable[i + 1]
        };
        if here.counts == 0 {
            plateau_end = i;
            violated_immediately = i == knee_idx;
            break;
        }
        let rel_change = (checkpoint.counts as f64 - here.counts as f64).abs() / here.counts as f64;
        let per_100v = rel_change * 100.0 / (checkpoint.voltage_v - here.voltage_v);
        if per_100v > PLATEAU_SLOPE_LIMIT_PER_100V {
            plateau_end = i;
            violated_immediately = i == knee_idx;
            break;
        }
    }

    if violated_immediately || plateau_end <= knee_idx {
        return Err(Error::NoPlateau);
    }

    let midpoint = (usable[knee_idx].voltage_v + usable[plateau_end].voltage_v) / 2.0;
    let snapped = usable
        .iter()
        .map(|p| p.voltage_v)
        .min_by(|a, b| {
            let da = (a - midpoint).abs();
            let db = (b - midpoint).abs();
            da.partial_cmp(&db)
                .unwrap()
                .then(a.partial_cmp(b).unwrap())
        })
        .unwrap();
    Ok(PlateauAnalysis {
        knee_voltage_v: usable[knee_idx].voltage_v,
        plateau_start_v: usable[knee_idx].voltage_v,
        plateau_end_v: usable[plateau_end].voltage_v,
        operating_voltage_v: snapped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(voltage_v: f64, counts: u64) -> PlateauPoint {
        PlateauPoint {
            voltage_v,
            counts,
            beyond_breakdown: false,
        }
    }

    #[test]
    fn flat_plateau_returns_exact_midpoint() {
        let scan = vec![
            point(700.0, 0),
            point(720.0, 1000),
            point(740.0, 1000),
            point(760.0, 1000),
        ];
        assert_eq!(find_operating_voltage(&scan).unwrap(), 740.0);
    }

    #[test]
    fn doubling_scan_has_no_plateau() {
        let scan: Vec<PlateauPoint> = (0..8)
            .map(|i| point(700.0 + 20.0 * i as f64, 100u64 << i))
            .collect();
        assert_eq!(find_operating_voltage(&scan).unwrap_err(), Error::NoPlateau);
    }

    #[test]
    fn too_few_nonzero_points_rejected() {
        let scan = vec![point(700.0, 0), point(720.0, 10), point(740.0, 12)];
        assert!(matches!(
            find_operating_voltage(&scan),
            Err(Error::InvalidConfig(_))
        ));
    }
}
