//! `distill`: run supersinglet distillation scenarios and validation suites.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 engine abort.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use distill::{output, scenario, scenario::Overrides, validate};
use supersinglet::protocol::{run_protocol, EngineChoice, InitialStateKind};

#[derive(Parser)]
#[command(
    name = "distill",
    version,
    about = "Supersinglet distillation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run a named scenario and write CSV telemetry (optionally an SVG plot).
    Run(RunArgs),
    /// Run an invariant validation suite.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario: fig2a, fig2b, fig2c, fig2d, fig2e, or custom.
    #[arg(long)]
    scenario: String,
    /// Optional key=value config file; command-line flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of qubits (even).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Depolarizing weight for the werner initial state.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Supersinglet tilt for the s0_mixture initial state.
    #[arg(long)]
    delta: Option<f64>,
    /// Engine: full, truncated, or auto.
    #[arg(long)]
    engine: Option<String>,
    /// Initial state recipe (for the custom scenario):
    /// singlet_symmetrized, modified_ghz, werner, s0_mixture.
    #[arg(long)]
    initial_state: Option<String>,
    /// Re-twirl after every iteration instead of only at preparation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    twirl_each_iteration: Option<bool>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output path (sweeps insert a label before the extension).
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG plot path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Suite: algebra, channels, engine, or all.
    #[arg(long)]
    suite: String,
}

fn labeled_path(path: &Path, label: Option<&str>) -> PathBuf {
    match label {
        None => path.to_path_buf(),
        Some(label) => {
            let stem = path.file_stem().unwrap_or_default().to_string_lossy();
            let ext = path.extension().map(|e| e.to_string_lossy().into_owned());
            let name = match ext {
                Some(ext) => format!("{stem}_{label}.{ext}"),
                None => format!("{stem}_{label}"),
            };
            path.with_file_name(name)
        }
    }
}

fn flag_overrides(args: &RunArgs) -> Result<Overrides> {
    Ok(Overrides {
        n_qubits: args.n,
        initial_state: args
            .initial_state
            .as_deref()
            .map(InitialStateKind::from_str)
            .transpose()?,
        epsilon: args.epsilon,
        delta: args.delta,
        engine: args
            .engine
            .as_deref()
            .map(EngineChoice::from_str)
            .transpose()?,
        iterations: args.iterations,
        twirl_each_iteration: args.twirl_each_iteration,
        seed: args.seed,
    })
}

/// Ok(true) = completed, Ok(false) = aborted on a vanishing branch.
fn run_command(args: &RunArgs) -> Result<bool> {
    let mut overrides = match &args.config {
        Some(path) => Overrides::from_config_file(path)?,
        None => Overrides::default(),
    };
    overrides = overrides.overridden_by(&flag_overrides(args)?);

    let configs = scenario::resolve(&args.scenario, &overrides)?;
    let mut completed = true;
    for (label, config) in &configs {
        let run = run_protocol(config).context("protocol run failed")?;
        let csv_path = labeled_path(&args.out, label.as_deref());
        output::write_csv(&csv_path, &run.records)?;
        println!(
            "wrote {} ({} records in {:.1?})",
            csv_path.display(),
            run.records.len(),
            run.wall_time
        );
        if let Some(plot) = &args.plot {
            let plot_path = labeled_path(plot, label.as_deref());
            output::write_plot(&plot_path, &run.records)?;
            println!("wrote {}", plot_path.display());
        }
        if let Some(reason) = run.abort {
            eprintln!("engine abort: {reason}");
            completed = false;
        }
    }
    Ok(completed)
}

/// Ok(true) = all checks passed.
fn validate_command(args: &ValidateArgs) -> Result<bool> {
    let checks = validate::suite(&args.suite).with_context(|| {
        format!(
            "unknown suite '{}' (algebra|channels|engine|all)",
            args.suite
        )
    })?;
    let mut all_ok = true;
    for c in &checks {
        if c.passed {
            println!("PASS {} ({})", c.name, c.detail);
        } else {
            println!("FAIL {} ({})", c.name, c.detail);
            all_ok = false;
        }
    }
    println!(
        "{}/{} checks passed",
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    );
    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error path with status 0.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match &cli.command {
        Command::Run(args) => run_command(args).map(|done| if done { 0u8 } else { 2 }),
        Command::Validate(args) => validate_command(args).map(|ok| if ok { 0u8 } else { 1 }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
