//! Acceptance suite: every release criterion as one test, each printing a
//! PASS line with the measured values (visible with `--nocapture`).
//!
//! Oracles used here are independent of the library code they check:
//! quadrature for the special functions, direct moment computation for the
//! Poisson simulator, the closed-form dead-time law, and a reference
//! plateau scan with hand-derived knee/midpoint values.

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use decaylab_cli::{ingest_counts, run_scenario, write_counts_csv, CountFormat, ScenarioSpec};
use decaylab_core::nist::special::{erfc, igamc};
use decaylab_core::{
    acquire, analyze_plateau, binarize_mean_threshold, entropy_profile, expected_noise_fraction,
    expected_rate, monobit_test, plateau_scan, run_battery, shannon_entropy, BatteryConfig,
    BitSequence, CountSeries, DetectorModel, ExperimentConfig, GeometryModel, PlateauPoint,
    SourceModel,
};

fn fair_bits(seed: u64, n_bits: usize) -> BitSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bytes = vec![0u8; n_bits.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    BitSequence::from_bytes(&bytes, n_bits).unwrap()
}

fn pass(criterion: &str, detail: String) {
    println!("ACCEPT {criterion}: PASS ({detail})");
}

// ---------------------------------------------------------------------------
// 1. entropy known answers
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_entropy_known_answers() {
    let started = Instant::now();

    let zeros = BitSequence::from_bools(&vec![false; 1000]);
    assert_eq!(shannon_entropy(&zeros).unwrap(), 0.0);

    let mut balanced = BitSequence::with_capacity(1000);
    for i in 0..1000 {
        balanced.push(i % 2 == 0);
    }
    assert!((shannon_entropy(&balanced).unwrap() - 1.0).abs() < 1e-12);

    // closed form for p = 1/4: -(1/4 log2 1/4 + 3/4 log2 3/4)
    let closed_form = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
    let quarter = BitSequence::from_ascii("1000").unwrap();
    let h = shannon_entropy(&quarter).unwrap();
    assert!((h - 0.811_278).abs() < 1e-6);
    assert!((h - closed_form).abs() < 1e-9);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0);
    pass(
        "criterion 1 (entropy known answers)",
        format!("H(p=1/4) = {h:.9}, runtime {elapsed:?}"),
    );
}

// ---------------------------------------------------------------------------
// 2. monobit known answers
// ---------------------------------------------------------------------------

/// erfc by Simpson quadrature of the Gaussian integrand; the oracle side
/// of the monobit KAT.
fn erfc_quadrature(x: f64) -> f64 {
    let upper = x + 14.0; // the tail beyond is < 1e-85 of the integrand
    let n = 200_000;
    let h = (upper - x) / n as f64;
    let f = |t: f64| (-t * t).exp();
    let mut sum = f(x) + f(upper);
    for i in 1..n {
        sum += f(x + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    (h / 3.0) * sum * 2.0 / std::f64::consts::PI.sqrt()
}

#[test]
fn criterion_02_monobit_known_answers() {
    let started = Instant::now();

    let six_ones = BitSequence::from_ascii("1011010101").unwrap();
    let p = monobit_test(&six_ones).unwrap().p_values[0];
    assert!((p - 0.52709).abs() < 1e-5, "P = {p}");
    // independent oracle: quadrature erfc at s_obs / sqrt(2)
    let s_obs = 2.0 / 10f64.sqrt();
    let oracle = erfc_quadrature(s_obs / std::f64::consts::SQRT_2);
    assert!((p - oracle).abs() < 1e-9, "P = {p}, oracle = {oracle}");

    let mut balanced = BitSequence::with_capacity(200);
    for i in 0..200 {
        balanced.push(i % 2 == 0);
    }
    assert_eq!(monobit_test(&balanced).unwrap().p_values[0], 1.0);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0);
    pass(
        "criterion 2 (monobit known answers)",
        format!("P(n=10, six ones) = {p:.6}, runtime {elapsed:?}"),
    );
}

// ---------------------------------------------------------------------------
// 3. special functions
// ---------------------------------------------------------------------------

/// Regularized upper incomplete gamma by quadrature: integrate the density
/// t^(a-1) e^-t over [x, x + tail] with Simpson's rule and normalize by
/// Gamma(a) (known in closed form for the a values used here).
fn igamc_quadrature(a: f64, x: f64, gamma_a: f64) -> f64 {
    let upper = x + 60.0 + 10.0 * a; // integrand decays like e^-t
    let n = 400_000;
    let h = (upper - x) / n as f64;
    let f = |t: f64| if t <= 0.0 { 0.0 } else { t.powf(a - 1.0) * (-t).exp() };
    let mut sum = f(x) + f(upper);
    for i in 1..n {
        sum += f(x + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    (h / 3.0) * sum / gamma_a
}

#[test]
fn criterion_03_special_functions() {
    // igamc(1/2, x) = erfc(sqrt(x)) on a 100-point grid over [0, 30]
    let mut worst = 0.0f64;
    for i in 0..100 {
        let x = 30.0 * i as f64 / 99.0;
        let diff = (igamc(0.5, x).unwrap() - erfc(x.sqrt())).abs();
        worst = worst.max(diff);
    }
    assert!(worst < 1e-10, "worst identity gap {worst:.3e}");

    // igamc(1.5, 0.5) against the published value and the quadrature oracle
    let got = igamc(1.5, 0.5).unwrap();
    assert!((got - 0.80125).abs() < 1e-5);
    let gamma_three_halves = std::f64::consts::PI.sqrt() / 2.0;
    let oracle = igamc_quadrature(1.5, 0.5, gamma_three_halves);
    assert!(
        (got - oracle).abs() < 1e-5,
        "igamc = {got}, quadrature = {oracle}"
    );

    pass(
        "criterion 3 (special functions)",
        format!("identity gap {worst:.2e}, igamc(1.5, 0.5) = {got:.6}"),
    );
}

// ---------------------------------------------------------------------------
// 4. battery calibration
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_battery_calibration() {
    const SEQUENCES: u64 = 1000;
    const N_BITS: usize = 1_000_000;
    let cfg = BatteryConfig::recommended_for(N_BITS);

    // per test: (p-values seen while applicable, rejections at alpha)
    let stats: BTreeMap<String, (u64, u64)> = (0..SEQUENCES)
        .into_par_iter()
        .map(|seed| {
            let seq = fair_bits(seed, N_BITS);
            let report = run_battery(&seq, &cfg).unwrap();
            let mut local: BTreeMap<String, (u64, u64)> = BTreeMap::new();
            for result in report.results.iter().filter(|r| r.applicable) {
                let entry = local.entry(result.test_name.clone()).or_default();
                entry.0 += result.p_values.len() as u64;
                entry.1 += result.p_values.iter().filter(|&&p| p < 0.01).count() as u64;
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, local| {
            for (name, (total, rejected)) in local {
                let entry = acc.entry(name).or_default();
                entry.0 += total;
                entry.1 += rejected;
            }
            acc
        });

    assert_eq!(stats.len(), 15, "every test should be applicable somewhere");
    let mut summary = String::new();
    for (name, (total, rejected)) in &stats {
        let rate = *rejected as f64 / *total as f64;
        summary.push_str(&format!("{name} {rate:.4} "));
        assert!(
            (0.001..=0.025).contains(&rate),
            "{name}: rejection rate {rate:.4} outside [0.001, 0.025] ({rejected}/{total})"
        );
    }
    pass("criterion 4 (battery calibration)", summary);
}

// ---------------------------------------------------------------------------
// 5. degenerate rejection
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_degenerate_rejection() {
    let all_zeros = BitSequence::from_bools(&vec![false; 5000]);
    let mut alternating = BitSequence::with_capacity(5000);
    for i in 0..5000 {
        alternating.push(i % 2 == 0);
    }

    let cfg = BatteryConfig::recommended_for(5000);
    let mut detail = String::new();
    for (label, seq) in [("all-zeros", &all_zeros), ("alternating", &alternating)] {
        let report = run_battery(seq, &cfg).unwrap();
        let failing: Vec<&str> = report
            .results
            .iter()
            .filter(|r| r.applicable && !r.passed)
            .map(|r| r.test_name.as_str())
            .collect();
        assert!(
            failing.len() >= 4,
            "{label}: only {} applicable tests fail: {failing:?}",
            failing.len()
        );
        detail.push_str(&format!("{label} fails {}; ", failing.len()));
    }
    pass("criterion 5 (degenerate rejection)", detail);
}

// ---------------------------------------------------------------------------
// 6. Poisson simulator soundness
// ---------------------------------------------------------------------------

/// Config with expected rate pinned to exactly `rate_cps`: full efficiency
/// at the knee, no background, no dead time.
fn pinned_rate_config(rate_cps: f64, dead_time_s: f64, preset_time_s: f64, runs: usize, seed: u64) -> ExperimentConfig {
    let geometry = GeometryModel::new(1.0, 1.0, 0.0).unwrap();
    let detector = DetectorModel {
        dead_time_s,
        plateau_slope_per_100v: 0.0,
        intrinsic_efficiency: 1.0,
        background_cps: 0.0,
        ..DetectorModel::default()
    };
    let source =
        SourceModel::new("pinned", 29.0, rate_cps / geometry.acceptance(), 0.0).unwrap();
    ExperimentConfig {
        source,
        geometry,
        detector,
        preset_time_s,
        run_count: runs,
        applied_voltage_v: 720.0,
        rng_seed: seed,
    }
}

#[test]
fn criterion_06_poisson_soundness() {
    // lambda * t = 100 over 10^4 runs; direct moment computation as oracle
    let mut good_seeds = 0;
    for seed in 0..100u64 {
        let cfg = pinned_rate_config(100.0, 0.0, 1.0, 10_000, seed);
        assert!((expected_rate(&cfg).unwrap() - 100.0).abs() < 1e-9);
        let series = acquire(&cfg).unwrap();
        let n = series.run_count() as f64;
        let mean = series.mean();
        let variance = series
            .counts()
            .iter()
            .map(|&c| (c as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        let ratio = variance / mean;
        if (mean - 100.0).abs() <= 0.3 && (0.94..=1.06).contains(&ratio) {
            good_seeds += 1;
        }
    }
    assert!(good_seeds >= 95, "only {good_seeds}/100 seeds within bounds");
    pass(
        "criterion 6 (Poisson soundness)",
        format!("{good_seeds}/100 seeds within mean/variance bounds"),
    );
}

// ---------------------------------------------------------------------------
// 7. dead time
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_dead_time() {
    let mut detail = String::new();
    for n_tau in [0.05, 0.1, 0.2] {
        let true_rate = 1000.0;
        let tau = n_tau / true_rate;
        let cfg = pinned_rate_config(true_rate, tau, 1.0, 4000, 99);
        let series = acquire(&cfg).unwrap();
        let observed_rate = series.mean() / cfg.preset_time_s;
        // non-paralyzable law as the oracle
        let predicted = true_rate / (1.0 + true_rate * tau);
        let rel = (observed_rate - predicted).abs() / predicted;
        assert!(
            rel < 0.02,
            "n*tau = {n_tau}: observed {observed_rate:.2}, predicted {predicted:.2}"
        );
        detail.push_str(&format!("ntau={n_tau}: {:.2}% off; ", rel * 100.0));
    }
    pass("criterion 7 (dead time)", detail);
}

// ---------------------------------------------------------------------------
// 8. paper-scale reproduction (half-life table analogue)
// ---------------------------------------------------------------------------

fn sr90_arm(seed: u64, distance_cm: f64, preset_time_s: f64) -> ExperimentConfig {
    let dir = std::path::Path::new("/tmp/unused");
    let mut spec = ScenarioSpec::distance_comparison(0, dir);
    let mut cfg = spec.arms.remove(0).config;
    cfg.geometry = GeometryModel::new(
        distance_cm,
        cfg.geometry.window_radius_cm,
        cfg.geometry.scatter_noise_coeff,
    )
    .unwrap();
    cfg.preset_time_s = preset_time_s;
    cfg.rng_seed = seed;
    cfg
}

fn arm_entropy_and_balance(cfg: &ExperimentConfig) -> (f64, f64) {
    let series = acquire(cfg).unwrap();
    let (bits, _) = binarize_mean_threshold(&series).unwrap();
    let profile = entropy_profile(&bits, 500, 1).unwrap();
    let ones = bits.count_ones() as f64 / bits.n_bits() as f64;
    (profile.mean_entropy, ones)
}

#[test]
fn criterion_08_paper_scale_reproduction() {
    let results: Vec<(f64, f64)> = (0..50u64)
        .into_par_iter()
        .map(|seed| arm_entropy_and_balance(&sr90_arm(seed, 2.0, 1.0)))
        .collect();
    let good = results
        .iter()
        .filter(|(entropy, ones)| *entropy >= 0.995 && (0.47..=0.53).contains(ones))
        .count();
    let mean_entropy = results.iter().map(|(e, _)| e).sum::<f64>() / results.len() as f64;
    assert!(good >= 45, "only {good}/50 seeds within bounds");
    pass(
        "criterion 8 (paper-scale reproduction)",
        format!("{good}/50 seeds pass, mean sliding-window entropy {mean_entropy:.4}"),
    );
}

// ---------------------------------------------------------------------------
// 9. preset-time null effect
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_preset_time_null_effect() {
    let per_seed: Vec<(f64, bool, f64)> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let one_second = sr90_arm(seed, 2.0, 1.0);
            let five_seconds = sr90_arm(seed.wrapping_add(1_000), 2.0, 5.0);

            let evaluate = |cfg: &ExperimentConfig| {
                let series = acquire(cfg).unwrap();
                let mean_counts = series.mean();
                let (bits, _) = binarize_mean_threshold(&series).unwrap();
                let profile = entropy_profile(&bits, 500, 1).unwrap();
                let report =
                    run_battery(&bits, &BatteryConfig::recommended_for(bits.n_bits())).unwrap();
                let applicable: Vec<String> = report
                    .results
                    .iter()
                    // the runs test's applicability hinges on a data-driven
                    // bias precondition, not on an input-size recommendation,
                    // so it is compared separately from the size-driven set
                    .filter(|r| r.applicable && r.test_name != "runs")
                    .map(|r| r.test_name.clone())
                    .collect();
                (profile.mean_entropy, applicable, mean_counts)
            };

            let (entropy_1s, applicable_1s, counts_1s) = evaluate(&one_second);
            let (entropy_5s, applicable_5s, counts_5s) = evaluate(&five_seconds);
            let identical_sets = applicable_1s == applicable_5s;
            let count_scale = counts_5s / counts_1s;
            ((entropy_1s - entropy_5s).abs(), identical_sets, count_scale)
        })
        .collect();

    let mean_abs_delta =
        per_seed.iter().map(|(d, _, _)| d).sum::<f64>() / per_seed.len() as f64;
    let all_sets_identical = per_seed.iter().all(|(_, same, _)| *same);
    let mean_scale =
        per_seed.iter().map(|(_, _, s)| s).sum::<f64>() / per_seed.len() as f64;

    assert!(mean_abs_delta <= 0.003, "mean |delta entropy| = {mean_abs_delta}");
    assert!(all_sets_identical, "size-driven applicability sets differ");
    assert!(
        (4.5..=5.5).contains(&mean_scale),
        "5 s arm should see ~5x the counts, got {mean_scale:.2}x"
    );
    pass(
        "criterion 9 (preset-time null effect)",
        format!("mean |delta entropy| = {mean_abs_delta:.5}, count scale {mean_scale:.2}x"),
    );
}

// ---------------------------------------------------------------------------
// 10. distance degradation
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_distance_degradation() {
    // model-expectation assertions are exact
    let near = sr90_arm(0, 2.0, 1.0);
    let far = sr90_arm(0, 4.0, 1.0);
    assert!(expected_rate(&far).unwrap() < expected_rate(&near).unwrap());
    assert!(expected_noise_fraction(&far).unwrap() > expected_noise_fraction(&near).unwrap());

    // directional entropy comparison across seeds
    let lower_count = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let (entropy_near, _) = arm_entropy_and_balance(&sr90_arm(seed, 2.0, 1.0));
            let (entropy_far, _) =
                arm_entropy_and_balance(&sr90_arm(seed.wrapping_add(2_000), 4.0, 1.0));
            entropy_far <= entropy_near
        })
        .count();
    assert!(lower_count >= 80, "only {lower_count}/100 seeds degraded");
    pass(
        "criterion 10 (distance degradation)",
        format!("4 cm arm lower entropy in {lower_count}/100 seeds"),
    );
}

// ---------------------------------------------------------------------------
// 11. plateau detection
// ---------------------------------------------------------------------------

/// Reference Co-60 plateau scan (30 s presets, 20 V steps).
const REFERENCE_SCAN: [(f64, u64); 23] = [
    (700.0, 0),
    (720.0, 1106),
    (740.0, 1105),
    (760.0, 1251),
    (780.0, 1171),
    (800.0, 1270),
    (820.0, 1200),
    (840.0, 1238),
    (860.0, 1277),
    (880.0, 1245),
    (900.0, 1244),
    (920.0, 1316),
    (940.0, 1306),
    (960.0, 1370),
    (980.0, 1300),
    (1000.0, 1330),
    (1020.0, 1335),
    (1040.0, 1392),
    (1060.0, 1386),
    (1080.0, 1418),
    (1100.0, 1418),
    (1120.0, 1392),
    (1140.0, 1442),
];

#[test]
fn criterion_11_plateau() {
    let scan: Vec<PlateauPoint> = REFERENCE_SCAN
        .iter()
        .map(|&(voltage_v, counts)| PlateauPoint {
            voltage_v,
            counts,
            beyond_breakdown: false,
        })
        .collect();
    let analysis = analyze_plateau(&scan).unwrap();
    assert_eq!(analysis.knee_voltage_v, 720.0);
    assert!(
        (760.0..=1100.0).contains(&analysis.operating_voltage_v),
        "operating voltage {}",
        analysis.operating_voltage_v
    );

    // simulated sweep with the default detector reproduces the shape
    let spec = ScenarioSpec::plateau_scan(17, std::path::Path::new("/tmp/unused"));
    let cfg = &spec.arms[0].config;
    let simulated = plateau_scan(cfg, 700.0, 20.0, 23).unwrap();
    let max = simulated.iter().map(|p| p.counts).max().unwrap();
    let first_nonzero = simulated.iter().find(|p| p.counts > 0).unwrap();
    let ratio = first_nonzero.counts as f64 / max as f64;
    assert!(ratio >= 0.5, "knee ratio {ratio:.3}");
    let simulated_op = analyze_plateau(&simulated).unwrap().operating_voltage_v;
    assert!(simulated_op > 700.0 && simulated_op < cfg.detector.breakdown_voltage_v);

    pass(
        "criterion 11 (plateau)",
        format!(
            "reference scan: knee 720 V, operating {} V; simulated knee ratio {ratio:.2}",
            analysis.operating_voltage_v
        ),
    );
}

// ---------------------------------------------------------------------------
// 12. determinism and round trips
// ---------------------------------------------------------------------------

#[test]
fn criterion_12_determinism_and_round_trips() {
    // identical seeded scenario -> byte-identical report
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    run_scenario(&ScenarioSpec::half_life_comparison(5, dir_a.path())).unwrap();
    run_scenario(&ScenarioSpec::half_life_comparison(5, dir_b.path())).unwrap();
    let report_a = fs::read(dir_a.path().join("report.json")).unwrap();
    let report_b = fs::read(dir_b.path().join("report.json")).unwrap();
    assert_eq!(report_a, report_b, "reports differ between identical runs");

    // ingest -> persist -> ingest identity
    let series = CountSeries::new(vec![7, 0, 42, 13, 13], 1.0, "Sr-90", 2.0, 900.0).unwrap();
    let path_one = dir_a.path().join("counts1.csv");
    let path_two = dir_a.path().join("counts2.csv");
    write_counts_csv(&series, &path_one).unwrap();
    let once = ingest_counts(&path_one, CountFormat::PlainCsv).unwrap();
    write_counts_csv(&once, &path_two).unwrap();
    let twice = ingest_counts(&path_two, CountFormat::PlainCsv).unwrap();
    assert_eq!(series, once);
    assert_eq!(once, twice);
    assert_eq!(fs::read(&path_one).unwrap(), fs::read(&path_two).unwrap());

    pass(
        "criterion 12 (determinism and round trips)",
        format!("report bytes identical ({} bytes), CSV round trip exact", report_a.len()),
    );
}
