//! CSV and manifest emission.
//!
//! Every value is written with 13 significant digits in scientific notation,
//! so identical runs produce byte-identical files. The manifest is written
//! last and lists every produced file; it carries the wall-clock duration
//! and is therefore excluded from byte-identity guarantees.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bakerwalk_core::{ObservableSeries, WignerGrid};

use crate::config::ExperimentKind;
use crate::runner::{ExperimentOutcome, MemberSummary};
use crate::RunError;

fn fmt_value(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.12e}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => fmt_value(v),
        None => "nan".to_string(),
    }
}

/// `t,value` rows for one series.
pub fn series_csv(series: &ObservableSeries) -> String {
    let mut out = String::from("t,value\n");
    for (&t, &v) in series.times().iter().zip(series.values()) {
        out.push_str(&format!("{t},{}\n", fmt_value(v)));
    }
    out
}

/// Grid export: header `M t label`, then 2M rows of 2M values.
pub fn grid_text(grid: &WignerGrid, t: u64, label: &str) -> String {
    let side = grid.side();
    let mut out = format!("{} {} {}\n", grid.ring_size(), t, label);
    for q in 0..side {
        let row: Vec<String> = (0..side).map(|p| fmt_value(grid.at(q, p))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn summary_csv(outcome: &ExperimentOutcome) -> (String, String) {
    match outcome.config.kind {
        ExperimentKind::Entropy => {
            let mut out = String::from("member,s0,period\n");
            for m in &outcome.members {
                if let MemberSummary::Entropy { saturation, period, .. } = &m.summary {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        m.id,
                        fmt_value(*saturation),
                        fmt_opt(*period)
                    ));
                }
            }
            (format!("{}_saturation.csv", outcome.config.name), out)
        }
        ExperimentKind::Variance => {
            let mut out = String::from("member,sd_slope,short_time_exponent\n");
            for m in &outcome.members {
                if let MemberSummary::Variance { slope, short_time_exponent, .. } = &m.summary {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        m.id,
                        fmt_opt(*slope),
                        fmt_opt(*short_time_exponent)
                    ));
                }
            }
            (format!("{}_sd_slope.csv", outcome.config.name), out)
        }
        ExperimentKind::Wigner => {
            let mut out = String::from("member,delta_window_mean\n");
            for m in &outcome.members {
                if let MemberSummary::Wigner { mean_distance, .. } = &m.summary {
                    out.push_str(&format!("{},{}\n", m.id, fmt_value(*mean_distance)));
                }
            }
            (format!("{}_delta_mean.csv", outcome.config.name), out)
        }
    }
}

fn io_err(context: &str, e: std::io::Error) -> RunError {
    RunError::Io(format!("{context}: {e}"))
}

/// Verify the output directory exists and is writable. Runs before any
/// computation starts.
pub fn prepare_out_dir(dir: &Path) -> Result<(), RunError> {
    fs::create_dir_all(dir).map_err(|e| io_err(&format!("creating {}", dir.display()), e))?;
    let probe = dir.join(".write_probe");
    fs::write(&probe, b"probe").map_err(|e| {
        io_err(&format!("output directory {} is not writable", dir.display()), e)
    })?;
    fs::remove_file(&probe).map_err(|e| io_err("removing write probe", e))?;
    Ok(())
}

/// Files produced for a set of completed experiments, plus the manifest.
pub struct EmittedFiles {
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Write one CSV per (member, observable), one summary table per
/// experiment, any requested grid dumps, and the manifest.
pub fn emit_csv(
    outcomes: &[ExperimentOutcome],
    out_dir: &Path,
    config_source: &str,
    threads: usize,
    duration_ms: u128,
) -> Result<EmittedFiles, RunError> {
    let mut files = Vec::new();
    let write = |name: String, contents: String| -> Result<PathBuf, RunError> {
        let path = out_dir.join(&name);
        let mut f =
            fs::File::create(&path).map_err(|e| io_err(&format!("creating {name}"), e))?;
        f.write_all(contents.as_bytes()).map_err(|e| io_err(&format!("writing {name}"), e))?;
        Ok(path)
    };

    for outcome in outcomes {
        for member in &outcome.members {
            for series in &member.series {
                let name = format!(
                    "{}_{}_{}.csv",
                    outcome.config.name,
                    member.id,
                    series.label().as_str()
                );
                files.push(write(name, series_csv(series))?);
            }
            if let Some((t, grid)) = &member.final_grid {
                let name = format!("{}_{}_wigner_grid_t{}.txt", outcome.config.name, member.id, t);
                files.push(write(name, grid_text(grid, *t, &member.id))?);
            }
        }
        let (name, contents) = summary_csv(outcome);
        files.push(write(name, contents)?);
    }

    let mut manifest = String::new();
    manifest.push_str(&format!("tool = simulate {}\n", env!("CARGO_PKG_VERSION")));
    manifest.push_str(&format!("config_source = {config_source}\n"));
    manifest.push_str(&format!("threads = {threads}\n"));
    manifest.push_str(&format!("duration_ms = {duration_ms}\n"));
    manifest.push_str("\n[config]\n");
    for outcome in outcomes {
        manifest.push_str(&outcome.config.echo());
        manifest.push('\n');
    }
    manifest.push_str("[outputs]\n");
    for file in &files {
        let name = file.file_name().expect("output file name").to_string_lossy();
        manifest.push_str(&format!("{name}\n"));
    }
    let manifest_path = write("manifest.txt".to_string(), manifest)?;

    // manifest invariant: every listed file exists and is non-empty
    for file in &files {
        let meta = fs::metadata(file).map_err(|e| io_err("checking output", e))?;
        if meta.len() == 0 {
            return Err(RunError::Io(format!("output file {} is empty", file.display())));
        }
    }

    Ok(EmittedFiles { files, manifest: manifest_path })
}
