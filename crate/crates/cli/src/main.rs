use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use bakerwalk_cli::{
    emit_csv, parse_config, prepare_out_dir, preset_text, run_experiment, RunError, PRESET_NAMES,
};

/// Deterministic quantum-walk experiment driver.
#[derive(Parser, Debug)]
#[command(name = "simulate", version, disable_help_subcommand = true)]
struct Cli {
    /// Path to a key = value experiment config file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Built-in preset: fig3 | fig4 | fig5 | fig6 | fig7.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// Output directory for CSV files and the manifest.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Worker threads for sector evolution and observable accumulation.
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

fn run(cli: Cli) -> Result<(), RunError> {
    let (text, source) = match (&cli.config, &cli.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Config(format!("reading {}: {e}", path.display())))?;
            (text, format!("file:{}", path.display()))
        }
        (None, Some(name)) => {
            let text = preset_text(name).ok_or_else(|| {
                RunError::Config(format!(
                    "unknown preset `{name}` (available: {})",
                    PRESET_NAMES.join(", ")
                ))
            })?;
            (text.to_string(), format!("preset:{name}"))
        }
        _ => {
            return Err(RunError::Config(
                "exactly one of --config <path> or --preset <name> is required".into(),
            ))
        }
    };

    let threads = cli.threads.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8)
    });
    if threads == 0 {
        return Err(RunError::Config("--threads must be at least 1".into()));
    }

    let configs = parse_config(&text)?;
    prepare_out_dir(&cli.out)?;

    let started = Instant::now();
    let mut outcomes = Vec::with_capacity(configs.len());
    for config in &configs {
        eprintln!(
            "running {} ({}, {} members, t_max {}) ...",
            config.name,
            config.kind.as_str(),
            config.members.len(),
            config.t_max
        );
        outcomes.push(run_experiment(config, threads)?);
    }
    let duration_ms = started.elapsed().as_millis();

    let emitted = emit_csv(&outcomes, &cli.out, &source, threads, duration_ms)?;
    eprintln!(
        "wrote {} files and {} in {} ms",
        emitted.files.len(),
        emitted.manifest.display(),
        duration_ms
    );
    Ok(())
}

fn main() -> ExitCode {
    // clap's own exit codes don't match the driver contract; map every
    // usage error to the config-error code.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
