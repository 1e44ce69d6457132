use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use graybeam::experiments::{
    circuit_report, report_file_name, rows_to_csv, run_hom, sweep_theta, sweep_trotter, theta_grid, ExperimentConfig,
};
use graybeam::{Error, Exec};

const EXIT_INVALID: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

/// Hong-Ou-Mandel interference on a Gray-encoded, Trotterized beam splitter.
///
/// Register layout: mode B on the left qubits, mode A on the right. With two
/// qubits per mode the input |1>_B|1>_A is the label 0101, and the bunched
/// outputs are 0011 (both photons in A) and 1100 (both in B).
#[derive(Parser, Debug)]
#[command(name = "hom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one experiment and report probabilities, counts and circuit metrics.
    Run {
        #[command(flatten)]
        common: Common,
        /// Start from a named preset; explicit flags still override it.
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
    /// Circuit-path runs over a list of Trotter step counts.
    SweepTrotter {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
        steps_list: Vec<usize>,
    },
    /// Coincidence probability over an evenly spaced grid of angles.
    SweepTheta {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 17)]
        points: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, default_value_t = FRAC_PI_2, allow_negative_numbers = true)]
        theta_max: f64,
        /// Evaluate through the synthesized circuit instead of the exact unitary.
        #[arg(long, conflicts_with = "exact")]
        circuit: bool,
    },
    /// Metrics of the full and reduced circuits side by side, plus QASM.
    CircuitReport {
        #[command(flatten)]
        common: Common,
        /// Directory for the QASM files.
        #[arg(long)]
        qasm_out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Beam-splitter angle in radians (pi/4 is 50:50).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Use the pruned two-photon interaction (2 qubits per mode only).
    #[arg(long)]
    reduced: bool,
    /// Evolve with the exact unitary instead of the circuit.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    qubits_per_mode: Option<usize>,
    /// Output file, or an existing directory to receive a hash-named file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run sweep rows on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Reduced circuit, 2 Trotter steps, 4000 shots; noiseless.
    Hardware,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_invalid_input() => EXIT_INVARIANT,
            _ => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl Common {
    fn config(&self, base: ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            theta: self.theta.unwrap_or(base.theta),
            trotter_steps: self.steps.unwrap_or(base.trotter_steps),
            shots: self.shots.unwrap_or(base.shots),
            seed: self.seed.unwrap_or(base.seed),
            reduced: self.reduced || base.reduced,
            exact: self.exact || base.exact,
            qubits_per_mode: self.qubits_per_mode.unwrap_or(base.qubits_per_mode),
        }
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::Io(parent.to_path_buf(), e))?;
    }
    fs::write(path, content).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    info!("wrote {}", path.display());
    Ok(())
}

/// Writes to `--out` (a file, or a directory that gets a hash-named file)
/// or to stdout.
fn emit(common: &Common, kind: &str, config: &ExperimentConfig, content: &str) -> Result<(), CliError> {
    match &common.out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) if p.is_dir() => write_file(&p.join(report_file_name(kind, config, common.format.ext())), content),
        Some(p) => write_file(p, content),
    }
}

#[derive(serde::Serialize)]
struct LabelRow<'a> {
    label: &'a str,
    probability: f64,
    count: u64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { common, preset } => {
            let base = match preset {
                Some(Preset::Hardware) => ExperimentConfig::hardware_preset(),
                None => ExperimentConfig::default(),
            };
            let config = common.config(base);
            let mut report = run_hom(&config)?;
            if preset == Some(Preset::Hardware) {
                report.note = Some(ExperimentConfig::HARDWARE_PRESET_NOTE.to_string());
            }
            let text = match common.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => {
                    let rows: Vec<_> = report
                        .probabilities
                        .iter()
                        .map(|(label, &p)| LabelRow { label, probability: p, count: report.count(label) })
                        .collect();
                    rows_to_csv(&rows)?
                }
            };
            emit(&common, "run", &config, &text)
        }
        Command::SweepTrotter { common, steps_list } => {
            let config = common.config(ExperimentConfig::default());
            let rows = sweep_trotter(&config, &steps_list, common.exec())?;
            let text = match common.format {
                Format::Json => {
                    let doc = serde_json::json!({ "config": config, "steps": steps_list, "rows": rows });
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                Format::Csv => rows_to_csv(&rows)?,
            };
            emit(&common, "sweep-trotter", &config, &text)
        }
        Command::SweepTheta { common, points, theta_min, theta_max, circuit } => {
            let config = ExperimentConfig { exact: !circuit, ..common.config(ExperimentConfig::default()) };
            if points == 0 {
                return Err(Error::InvalidArgument("--points must be at least 1".into()).into());
            }
            let grid = theta_grid(theta_min, theta_max, points);
            let rows = sweep_theta(&config, &grid, common.exec())?;
            let text = match common.format {
                Format::Json => {
                    let doc = serde_json::json!({ "config": config, "rows": rows });
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                Format::Csv => rows_to_csv(&rows)?,
            };
            emit(&common, "sweep-theta", &config, &text)
        }
        Command::CircuitReport { common, qasm_out } => {
            let config = common.config(ExperimentConfig { trotter_steps: 1, ..Default::default() });
            let report = circuit_report(&config)?;
            if let Some(dir) = &qasm_out {
                write_file(&dir.join(report_file_name("full", &config, "qasm")), &report.full.qasm)?;
                if let Some(red) = &report.reduced {
                    write_file(&dir.join(report_file_name("reduced", &config, "qasm")), &red.qasm)?;
                }
            }
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                Format::Csv => {
                    let mut rows = vec![("full", &report.full.metrics)];
                    if let Some(red) = &report.reduced {
                        rows.push(("reduced", &red.metrics));
                    }
                    let table: Vec<_> = rows
                        .into_iter()
                        .map(|(variant, m)| MetricsRow { variant, depth: m.depth, cx: m.cx_count, total_gates: m.total_gates })
                        .collect();
                    rows_to_csv(&table)?
                }
            };
            emit(&common, "circuit-report", &config, &text)
        }
    }
}

#[derive(serde::Serialize)]
struct MetricsRow {
    variant: &'static str,
    depth: usize,
    cx: usize,
    total_gates: usize,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
