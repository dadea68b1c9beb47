//! `dpathsim` — build delay ECDFs from traces, synthesize reference
//! models, run scenarios, and compare runs.
//!
//! Exit codes: 0 success, 1 usage/configuration error, 2 data or I/O
//! error. Outputs are staged in memory and written only once a command
//! has fully succeeded, so a non-zero exit never leaves partial files.
//! Usage errors never touch the filesystem.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dpathsim::traceio::{
    export_comparison_csv, export_ecdf_csv, export_records_csv, parse_records_csv, parse_trace,
    save_model,
};
use dpathsim::{
    build_reference_models, compare_distributions, run_simulation, ComparisonTable,
    DelayDistributions, DistributionSummary, EmpiricalDistribution, ScenarioConfig,
    SimulationReport, Stage,
};

/// Environment variable overriding the scenario seed. Precedence:
/// `--seed` flag, then this variable, then the config file.
const SEED_ENV: &str = "DPATHSIM_SEED";

#[derive(Parser)]
#[command(
    name = "dpathsim",
    version,
    about = "Open vSwitch datapath delay simulator driven by empirical delay distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an ECDF CSV from a raw two-column delay trace
    Ecdf {
        /// Trace file: `sample_index delay_us` rows, `#` comments
        trace: PathBuf,
        /// Output CSV path
        #[arg(short, long, value_name = "CSV")]
        output: PathBuf,
    },
    /// Bundled reference model datasets
    Models {
        #[command(subcommand)]
        action: ModelsCommand,
    },
    /// Run a scenario config file, or every *.conf in a directory
    Simulate {
        /// Scenario config file (flat key=value) or a directory of them
        config: PathBuf,
        /// Output directory for records, ECDF CSVs, and the summary
        #[arg(short, long, value_name = "DIR")]
        output: PathBuf,
        /// Override the scenario seed (beats DPATHSIM_SEED and the config)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare two simulation output directories
    Compare {
        /// First run directory (the comparison baseline)
        dir_a: PathBuf,
        /// Second run directory
        dir_b: PathBuf,
        /// Output CSV path
        #[arg(short, long, value_name = "CSV")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum ModelsCommand {
    /// Write the synthetic voi/boi reference models to a directory
    Synth {
        #[arg(short, long, value_name = "DIR")]
        output: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<dpathsim::Error> for CliError {
    fn from(err: dpathsim::Error) -> Self {
        if err.is_config_error() {
            CliError::Usage(err.to_string())
        } else {
            CliError::Data(err.to_string())
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn data(message: impl Into<String>) -> CliError {
    CliError::Data(message.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ecdf { trace, output } => cmd_ecdf(&trace, &output),
        Command::Models {
            action: ModelsCommand::Synth { output },
        } => cmd_models_synth(&output),
        Command::Simulate {
            config,
            output,
            seed,
        } => cmd_simulate(&config, &output, seed),
        Command::Compare {
            dir_a,
            dir_b,
            output,
        } => cmd_compare(&dir_a, &dir_b, &output),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

/// Staged output files, written only after a command fully succeeds.
/// A failure mid-write removes everything already written.
struct Outputs {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new() }
    }

    fn add(&mut self, path: PathBuf, bytes: Vec<u8>) {
        self.files.push((path, bytes));
    }

    fn write_all(self) -> Result<(), CliError> {
        let mut written: Vec<PathBuf> = Vec::new();
        for (path, bytes) in &self.files {
            let result = (|| {
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        fs::create_dir_all(parent)?;
                    }
                }
                fs::write(path, bytes)
            })();
            match result {
                Ok(()) => written.push(path.clone()),
                Err(e) => {
                    for p in &written {
                        let _ = fs::remove_file(p);
                    }
                    return Err(data(format!("{}: {e}", path.display())));
                }
            }
        }
        Ok(())
    }
}

fn cmd_ecdf(trace_path: &Path, output: &Path) -> Result<(), CliError> {
    let bytes = read_file(trace_path)?;
    let trace = parse_trace(&bytes)?;
    let dist = EmpiricalDistribution::from_samples(&trace.delays())?;

    let mut outputs = Outputs::new();
    outputs.add(output.to_path_buf(), export_ecdf_csv(&dist));
    outputs.write_all()?;

    println!(
        "trace: {} samples, {} distinct values",
        dist.n_samples(),
        dist.support().len()
    );
    print!("{}", render_summary_table(&[("delay", dist.summarize())]));
    println!("wrote {}", output.display());
    Ok(())
}

fn cmd_models_synth(output: &Path) -> Result<(), CliError> {
    let models = build_reference_models();
    let mut outputs = Outputs::new();
    for (name, model) in &models {
        outputs.add(output.join(format!("{name}.model")), save_model(model));
    }
    outputs.write_all()?;

    for (name, model) in &models {
        println!(
            "model {name}: wrote {}",
            output.join(format!("{name}.model")).display()
        );
        for stage in Stage::ALL {
            let d = model.stage(stage);
            println!(
                "  {:<13} mean {:>8.3} us  variance {:>8.4}  range [{:.3}, {:.3}]",
                stage.label(),
                d.mean(),
                d.variance(),
                d.min(),
                d.max()
            );
        }
    }
    Ok(())
}

fn effective_seed(flag: Option<u64>) -> Result<Option<u64>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw
            .parse::<u64>()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_ENV}: cannot parse `{raw}` as a seed"))),
        Err(_) => Ok(None),
    }
}

fn load_config(path: &Path, seed_override: Option<u64>) -> Result<ScenarioConfig, CliError> {
    let bytes = read_file(path)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| usage(format!("{}: config is not valid UTF-8", path.display())))?;
    // Any config-content problem is a usage error (exit 1).
    let mut config = ScenarioConfig::from_key_values(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    Ok(config)
}

fn stage_run_outputs(outputs: &mut Outputs, dir: &Path, report: &SimulationReport) -> String {
    outputs.add(dir.join("records.csv"), export_records_csv(&report.records));
    for (stage, dist) in report.distributions.per_stage.iter() {
        outputs.add(
            dir.join(format!("ecdf_{}.csv", stage.label())),
            export_ecdf_csv(dist),
        );
    }
    outputs.add(
        dir.join("ecdf_total.csv"),
        export_ecdf_csv(&report.distributions.total),
    );
    let summary = render_run_summary(report);
    outputs.add(dir.join("summary.txt"), summary.clone().into_bytes());
    summary
}

fn cmd_simulate(config_path: &Path, output: &Path, seed_flag: Option<u64>) -> Result<(), CliError> {
    let seed_override = effective_seed(seed_flag)?;

    if config_path.is_dir() {
        let mut config_files: Vec<PathBuf> = fs::read_dir(config_path)
            .map_err(|e| data(format!("{}: {e}", config_path.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "conf"))
            .collect();
        config_files.sort();
        if config_files.is_empty() {
            return Err(data(format!(
                "{}: no *.conf scenario files found",
                config_path.display()
            )));
        }
        let configs: Vec<(String, ScenarioConfig)> = config_files
            .iter()
            .map(|path| {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "run".to_string());
                load_config(path, seed_override).map(|c| (name, c))
            })
            .collect::<Result<_, _>>()?;

        // Independent runs; each owns its state and rng streams.
        let results: Vec<(String, Result<SimulationReport, dpathsim::Error>)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = configs
                    .iter()
                    .map(|(name, config)| {
                        let name = name.clone();
                        scope.spawn(move || (name, run_simulation(config)))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("run panicked"))
                    .collect()
            });

        let mut outputs = Outputs::new();
        let mut summaries = Vec::new();
        for (name, result) in results {
            let report = result?;
            let summary = stage_run_outputs(&mut outputs, &output.join(&name), &report);
            summaries.push((name, summary));
        }
        outputs.write_all()?;
        for (name, summary) in summaries {
            println!("== {name} ==");
            print!("{summary}");
        }
        println!(
            "wrote {} run(s) under {}",
            config_files.len(),
            output.display()
        );
        return Ok(());
    }

    let config = load_config(config_path, seed_override)?;
    let report = run_simulation(&config)?;
    let mut outputs = Outputs::new();
    let summary = stage_run_outputs(&mut outputs, output, &report);
    outputs.write_all()?;
    print!("{summary}");
    println!("wrote {}", output.display());
    Ok(())
}

fn load_run_distributions(dir: &Path) -> Result<DelayDistributions, CliError> {
    let records_path = dir.join("records.csv");
    let records = parse_records_csv(&read_file(&records_path)?)
        .map_err(|e| data(format!("{}: {e}", records_path.display())))?;
    Ok(DelayDistributions::from_records(&records)?)
}

fn cmd_compare(dir_a: &Path, dir_b: &Path, output: &Path) -> Result<(), CliError> {
    let a = load_run_distributions(dir_a)?;
    let b = load_run_distributions(dir_b)?;
    let table = compare_distributions(&a, &b);

    let mut outputs = Outputs::new();
    outputs.add(output.to_path_buf(), export_comparison_csv(&table));
    outputs.write_all()?;

    print!("{}", render_comparison(&table));
    println!("wrote {}", output.display());
    Ok(())
}

fn render_summary_table(rows: &[(&str, DistributionSummary)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<13} {:>7} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "component", "n", "min", "mean", "median", "p95", "p99", "max"
    );
    for (name, s) in rows {
        let _ = writeln!(
            out,
            "{:<13} {:>7} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3}",
            name, s.n, s.min, s.mean, s.median, s.p95, s.p99, s.max
        );
    }
    out
}

fn render_run_summary(report: &SimulationReport) -> String {
    let mut out = String::from("# dpathsim run summary\n");
    out.push_str(&report.config.to_key_values());
    let _ = writeln!(
        out,
        "packets={} hits={} misses={}",
        report.hit_count + report.miss_count,
        report.hit_count,
        report.miss_count
    );
    out.push('\n');
    let mut rows: Vec<(&str, DistributionSummary)> = Stage::ALL
        .iter()
        .map(|&stage| (stage.label(), *report.stage_summaries.get(stage)))
        .collect();
    rows.push(("total", report.total_summary));
    out.push_str(&render_summary_table(&rows));
    out
}

fn render_comparison(table: &ComparisonTable) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<13} {:>12} {:>11} {:>11} {:>11} {:>11}",
        "component", "ks_distance", "d_mean", "d_median", "d_p99", "d_max"
    );
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{:<13} {:>12.6} {:>11.3} {:>11.3} {:>11.3} {:>11.3}",
            row.component, row.ks, row.delta.mean, row.delta.median, row.delta.p99, row.delta.max
        );
    }
    out
}
