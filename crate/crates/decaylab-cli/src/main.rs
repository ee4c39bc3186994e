//! `decaylab` command line: simulate acquisitions, analyze counter
//! exports, sweep the plateau, test bit files, and run scenario presets.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 model error
//! (breakdown region, no plateau).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use decaylab_cli::{
    emit_plot_data, ingest_counts, read_bits, write_bits, write_counts_csv, write_json,
    AnalysisReport, BalanceSummary, CountFormat, EntropySummary, HarnessError, ScenarioName,
    ScenarioSpec, REPORT_SCHEMA,
};
use decaylab_core::{
    acquire, binarize_mean_threshold, default_window_size, entropy_profile,
    find_operating_voltage, monobit_test, plateau_scan, run_battery, BatteryConfig,
    DetectorModel, ExperimentConfig, GeometryModel, SourceModel,
};

#[derive(Parser)]
#[command(name = "decaylab", version, about = "Radioactive-decay RNG simulation and randomness testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a counting run and write the counts as CSV.
    Simulate(SimulateArgs),
    /// Ingest a counts file, post-process it, and run the tests.
    Analyze(AnalyzeArgs),
    /// Sweep the tube voltage and report the operating voltage.
    Plateau(PlateauArgs),
    /// Run the statistical battery over an existing bits file.
    Battery(BatteryArgs),
    /// Run a named scenario preset end to end.
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Preset source: sr90 or co60.
    #[arg(long, default_value = "sr90")]
    source: String,
    /// Override the initial emission rate, counts/second.
    #[arg(long, default_value_t = decaylab_cli::scenario::PRESET_SOURCE_RATE_CPS)]
    initial_rate_cps: f64,
    /// Override the source age, years.
    #[arg(long, default_value_t = decaylab_cli::scenario::PRESET_SOURCE_AGE_YEARS)]
    elapsed_years: f64,
    /// Custom half-life, years (with --source custom).
    #[arg(long)]
    half_life_years: Option<f64>,
    /// Custom isotope label (with --source custom).
    #[arg(long)]
    isotope_label: Option<String>,
}

impl SourceArgs {
    fn build(&self) -> Result<SourceModel, HarnessError> {
        match self.source.as_str() {
            "sr90" => Ok(SourceModel::strontium90(self.initial_rate_cps, self.elapsed_years)?),
            "co60" => Ok(SourceModel::cobalt60(self.initial_rate_cps, self.elapsed_years)?),
            "custom" => {
                let half_life = self.half_life_years.ok_or_else(|| {
                    HarnessError::Scenario("--source custom requires --half-life-years".into())
                })?;
                let label = self.isotope_label.clone().unwrap_or_else(|| "custom".into());
                Ok(SourceModel::new(label, half_life, self.initial_rate_cps, self.elapsed_years)?)
            }
            other => Err(HarnessError::Scenario(format!(
                "unknown source '{other}' (expected sr90, co60, or custom)"
            ))),
        }
    }
}

#[derive(Args)]
struct GeometryArgs {
    /// Source-to-window distance, centimetres.
    #[arg(long, default_value_t = 2.0)]
    distance_cm: f64,
    /// Detector window radius, centimetres.
    #[arg(long, default_value_t = decaylab_cli::scenario::PRESET_WINDOW_RADIUS_CM)]
    window_radius_cm: f64,
    /// Background growth per centimetre of distance.
    #[arg(long, default_value_t = decaylab_cli::scenario::PRESET_SCATTER_COEFF)]
    scatter_coeff: f64,
}

impl GeometryArgs {
    fn build(&self) -> Result<GeometryModel, HarnessError> {
        Ok(GeometryModel::new(self.distance_cm, self.window_radius_cm, self.scatter_coeff)?)
    }
}

#[derive(Args)]
struct DetectorArgs {
    /// Non-paralyzable dead time, seconds.
    #[arg(long, default_value_t = 1.0e-4)]
    dead_time_s: f64,
    #[arg(long, default_value_t = 720.0)]
    knee_voltage: f64,
    #[arg(long, default_value_t = 1200.0)]
    breakdown_voltage: f64,
    /// Relative count growth per 100 V inside the plateau.
    #[arg(long, default_value_t = 0.06)]
    plateau_slope: f64,
    #[arg(long, default_value_t = 0.85)]
    efficiency: f64,
    /// Ambient background, counts/second.
    #[arg(long, default_value_t = 0.2)]
    background_cps: f64,
}

impl DetectorArgs {
    fn build(&self) -> DetectorModel {
        DetectorModel {
            dead_time_s: self.dead_time_s,
            knee_voltage_v: self.knee_voltage,
            breakdown_voltage_v: self.breakdown_voltage,
            plateau_slope_per_100v: self.plateau_slope,
            intrinsic_efficiency: self.efficiency,
            background_cps: self.background_cps,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// RNG seed; required so every run is reproducible.
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    detector: DetectorArgs,
    #[arg(long, default_value_t = 1.0)]
    preset_time_s: f64,
    /// Number of timed runs (one count each).
    #[arg(long, default_value_t = 5000)]
    runs: usize,
    #[arg(long, default_value_t = decaylab_cli::scenario::PRESET_VOLTAGE_V)]
    voltage: f64,
    /// Output counts CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Counts file to ingest.
    #[arg(long)]
    input: PathBuf,
    /// Input format: plain-csv or st360.
    #[arg(long, default_value = "plain-csv")]
    format: String,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Entropy window; defaults to a tenth of the bit count.
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Report JSON output path.
    #[arg(long)]
    report: PathBuf,
    /// Optionally persist the extracted bits.
    #[arg(long)]
    bits_out: Option<PathBuf>,
}

#[derive(Args)]
struct PlateauArgs {
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[command(flatten)]
    detector: DetectorArgs,
    #[arg(long, default_value_t = 30.0)]
    preset_time_s: f64,
    #[arg(long, default_value_t = decaylab_cli::scenario::PLATEAU_V_START)]
    v_start: f64,
    #[arg(long, default_value_t = decaylab_cli::scenario::PLATEAU_V_STEP)]
    v_step: f64,
    #[arg(long, default_value_t = decaylab_cli::scenario::PLATEAU_STEPS)]
    steps: usize,
    /// Output scan CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BatteryArgs {
    /// ASCII 0/1 bits file.
    #[arg(long)]
    bits: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Report JSON output path.
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct ScenarioArgs {
    /// One of: half_life_comparison, preset_time_comparison,
    /// distance_comparison, plateau_scan.
    name: String,
    #[arg(long)]
    seed: u64,
    /// Directory receiving the report, sidecar files, and plot data.
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Analyze(args) => analyze(args),
        Command::Plateau(args) => plateau(args),
        Command::Battery(args) => battery(args),
        Command::Scenario(args) => scenario(args),
    }
}

fn simulate(args: SimulateArgs) -> Result<(), HarnessError> {
    let config = ExperimentConfig {
        source: args.source.build()?,
        geometry: args.geometry.build()?,
        detector: args.detector.build(),
        preset_time_s: args.preset_time_s,
        run_count: args.runs,
        applied_voltage_v: args.voltage,
        rng_seed: args.seed,
    };
    let series = acquire(&config)?;
    write_counts_csv(&series, &args.out)?;
    println!(
        "wrote {} counts (mean {:.2}) to {}",
        series.run_count(),
        series.mean(),
        args.out.display()
    );
    Ok(())
}

fn parse_format(name: &str) -> Result<CountFormat, HarnessError> {
    match name {
        "plain-csv" => Ok(CountFormat::PlainCsv),
        "st360" => Ok(CountFormat::St360Export),
        other => Err(HarnessError::Scenario(format!(
            "unknown format '{other}' (expected plain-csv or st360)"
        ))),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), HarnessError> {
    let series = ingest_counts(&args.input, parse_format(&args.format)?)?;
    let (bits, threshold) = binarize_mean_threshold(&series)?;
    let window = args.window.unwrap_or_else(|| default_window_size(bits.n_bits()));
    let profile = entropy_profile(&bits, window, args.stride)?;
    let monobit = monobit_test(&bits)?;
    let battery_cfg = BatteryConfig {
        alpha: args.alpha,
        ..BatteryConfig::recommended_for(bits.n_bits())
    };
    let battery = run_battery(&bits, &battery_cfg)?;

    if let Some(bits_out) = &args.bits_out {
        write_bits(&bits, bits_out)?;
    }
    let report = AnalysisReport {
        schema: REPORT_SCHEMA.to_string(),
        input_file: args.input.display().to_string(),
        source_label: series.source_label().to_string(),
        preset_time_s: series.preset_time_s(),
        distance_cm: series.distance_cm(),
        applied_voltage_v: series.applied_voltage_v(),
        threshold,
        balance: BalanceSummary::of(&bits)?,
        entropy: EntropySummary::from(&profile),
        monobit,
        battery: battery.clone(),
        };
    write_json(&report, &args.report)?;
    println!(
        "{}: mean entropy {:.4}%, battery {}/{} applicable tests passed",
        args.input.display(),
        report.entropy.mean_entropy_pct,
        battery.passed_count(),
        battery.applicable_count()
    );
    Ok(())
}

fn plateau(args: PlateauArgs) -> Result<(), HarnessError> {
    let config = ExperimentConfig {
        source: args.source.build()?,
        geometry: args.geometry.build()?,
        detector: args.detector.build(),
        preset_time_s: args.preset_time_s,
        run_count: 1,
        applied_voltage_v: args.v_start.max(1.0),
        rng_seed: args.seed,
    };
    let points = plateau_scan(&config, args.v_start, args.v_step, args.steps)?;
    decaylab_cli::scenario::write_scan_csv(&points, &args.out)?;
    let operating = find_operating_voltage(&points)?;
    println!("operating voltage: {operating} V");
    Ok(())
}

fn battery(args: BatteryArgs) -> Result<(), HarnessError> {
    let bits = read_bits(&args.bits)?;
    let cfg = BatteryConfig {
        alpha: args.alpha,
        ..BatteryConfig::recommended_for(bits.n_bits())
    };
    let report = run_battery(&bits, &cfg)?;
    write_json(&report, &args.report)?;
    println!(
        "{} bits: {}/{} applicable tests passed ({:.1}%)",
        bits.n_bits(),
        report.passed_count(),
        report.applicable_count(),
        report.pass_fraction * 100.0
    );
    Ok(())
}

fn scenario(args: ScenarioArgs) -> Result<(), HarnessError> {
    let name = ScenarioName::parse(&args.name).ok_or_else(|| {
        HarnessError::Scenario(format!(
            "unknown scenario '{}' (expected half_life_comparison, preset_time_comparison, \
             distance_comparison, or plateau_scan)",
            args.name
        ))
    })?;
    let spec = ScenarioSpec::preset(name, args.seed, &args.out_dir)?;
    let report = decaylab_cli::run_scenario(&spec)?;
    let plots = emit_plot_data(&report, &args.out_dir, &args.out_dir.join("plots"))?;
    println!("report: {}", spec.report_path.display());
    for verdict in &report.verdicts {
        println!("  {verdict}");
    }
    println!("plot data: {} files", plots.len());
    Ok(())
}
