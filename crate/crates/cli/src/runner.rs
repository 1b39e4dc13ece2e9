//! Experiment execution: sweep the configured operator members, record the
//! requested observables at the configured stride, and attach the summary
//! estimators used by the figure tables.

use bakerwalk_core::observables::{
    add_gram, coin_gram_block, gram_block_ranges, purity_from_coin_gram,
};
use bakerwalk_core::wigner::GRID_TOTAL;
use bakerwalk_core::{
    build_baker_applier, classical_phase_grid, classical_walk_distribution, distance,
    entropy_saturation, init_state, position_distribution, position_variance,
    power_law_exponent, reduced_density, sd_slope, von_neumann_entropy_of_state,
    wigner_from_density, BakerApplier, Error, ObservableSeries, SeriesLabel, SystemState,
    WignerGrid,
};

use crate::config::{ExperimentConfig, ExperimentKind, ExtraObservable};
use crate::par::{evolve_parallel, run_indexed};
use crate::RunError;

/// Ring-size cap for the dense Wigner evaluation.
pub const WIGNER_RING_CAP: usize = 64;

/// Summary estimators attached to one member's series.
#[derive(Debug, Clone, PartialEq)]
pub enum MemberSummary {
    Entropy {
        window: (u64, u64),
        saturation: f64,
        period: Option<f64>,
    },
    Variance {
        window: (u64, u64),
        slope: Option<f64>,
        short_time_exponent: Option<f64>,
    },
    Wigner {
        window: (u64, u64),
        mean_distance: f64,
    },
}

/// One member's recorded output.
#[derive(Debug, Clone)]
pub struct MemberOutcome {
    pub id: String,
    pub series: Vec<ObservableSeries>,
    pub summary: MemberSummary,
    /// Final-time grid, kept when the config asks for grid dumps.
    pub final_grid: Option<(u64, WignerGrid)>,
}

impl MemberOutcome {
    pub fn primary_series(&self) -> &ObservableSeries {
        &self.series[0]
    }
}

/// A completed experiment sweep.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub members: Vec<MemberOutcome>,
}

fn map_core_err(e: Error) -> RunError {
    match e {
        Error::WrappedSupport { .. } | Error::SizeGuardExceeded { .. } => {
            RunError::Guard(e.to_string())
        }
        other => RunError::Config(format!("internal: {other}")),
    }
}

/// Linear entropy with the Gram blocks computed in parallel; folds block
/// partials in block order, so the result is bitwise-identical to the
/// serial path for any thread count.
fn linear_entropy_parallel(state: &SystemState, threads: usize) -> f64 {
    let dim = state.dim();
    let ranges: Vec<_> = gram_block_ranges(state.ring_size()).collect();
    let blocks = run_indexed(ranges.len(), threads, |b| coin_gram_block(state, ranges[b].clone()));
    let mut total = vec![bakerwalk_core::C64::new(0.0, 0.0); dim * dim];
    for block in &blocks {
        add_gram(&mut total, block);
    }
    -purity_from_coin_gram(&total, dim).log2()
}

fn default_entropy_window(dim: usize, t_max: u64) -> (u64, u64) {
    let start = (5.0 * (dim as f64).log2()).ceil() as u64;
    (start.min(t_max), t_max)
}

fn run_member(
    config: &ExperimentConfig,
    member_idx: usize,
    threads: usize,
) -> Result<MemberOutcome, RunError> {
    let member = &config.members[member_idx];
    let id = member.label();
    let spec = member.baker_spec(config.angles);
    let applier: BakerApplier = build_baker_applier(&spec).map_err(map_core_err)?;
    let coin = member.coin_spec(config.coin);
    let mut state = init_state(config.ring_size, &coin).map_err(map_core_err)?;

    if config.kind == ExperimentKind::Wigner && config.ring_size > WIGNER_RING_CAP {
        return Err(RunError::Guard(format!(
            "wigner experiments need ring_size <= {WIGNER_RING_CAP} for the dense grid \
             evaluation (got {}); use a smaller ring",
            config.ring_size
        )));
    }

    let record_times = config.stride.record_times(config.t_max);
    let mut series: Vec<ObservableSeries> = match config.kind {
        ExperimentKind::Entropy => {
            let mut all = vec![ObservableSeries::new(SeriesLabel::LinearEntropyBits)];
            if config.extras.contains(&ExtraObservable::VonNeumann) {
                all.push(ObservableSeries::new(SeriesLabel::VonNeumannBits));
            }
            all
        }
        ExperimentKind::Variance => {
            let mut all = vec![ObservableSeries::new(SeriesLabel::StdDev)];
            if config.extras.contains(&ExtraObservable::Variance) {
                all.push(ObservableSeries::new(SeriesLabel::Variance));
            }
            all
        }
        ExperimentKind::Wigner => vec![ObservableSeries::new(SeriesLabel::WignerDistance)],
    };
    let mut final_grid = None;

    for (i, &t) in record_times.iter().enumerate() {
        if i > 0 {
            evolve_parallel(&mut state, t - record_times[i - 1], &applier, threads);
        }
        match config.kind {
            ExperimentKind::Entropy => {
                series[0].push(t, linear_entropy_parallel(&state, threads));
                if series.len() > 1 {
                    let sv = von_neumann_entropy_of_state(&state).map_err(map_core_err)?;
                    series[1].push(t, sv);
                }
            }
            ExperimentKind::Variance => {
                let dist = position_distribution(&state);
                let var = position_variance(&dist).map_err(map_core_err)?;
                series[0].push(t, var.max(0.0).sqrt());
                if series.len() > 1 {
                    series[1].push(t, var);
                }
            }
            ExperimentKind::Wigner => {
                let rho = reduced_density(&state);
                let grid = wigner_from_density(&rho).map_err(map_core_err)?;
                let reference = classical_phase_grid(
                    &classical_walk_distribution(config.ring_size, t).map_err(map_core_err)?,
                );
                debug_assert!((grid.total() - GRID_TOTAL).abs() < 1e-8);
                let delta = distance(&grid, &reference).map_err(map_core_err)?;
                series[0].push(t, delta);
                if config.dump_grids && i == record_times.len() - 1 {
                    final_grid = Some((t, grid));
                }
            }
        }
    }

    let summary = match config.kind {
        ExperimentKind::Entropy => {
            let window = config
                .window
                .unwrap_or_else(|| default_entropy_window(spec.dim(), config.t_max));
            match entropy_saturation(&series[0], window) {
                Ok((saturation, period)) => MemberSummary::Entropy { window, saturation, period },
                Err(Error::TooFewSamples { .. }) => MemberSummary::Entropy {
                    window,
                    saturation: mean_over_window(&series[0], window),
                    period: None,
                },
                Err(e) => return Err(map_core_err(e)),
            }
        }
        ExperimentKind::Variance => {
            let window = config.window.unwrap_or((config.t_max / 2, config.t_max));
            let slope = sd_slope(&series[0], window).ok();
            let ehrenfest = (spec.dim() as f64).log2().round() as u64;
            let short_time_exponent = power_law_exponent(&series[0], (2, ehrenfest.max(4))).ok();
            MemberSummary::Variance { window, slope, short_time_exponent }
        }
        ExperimentKind::Wigner => {
            let window = config.window.unwrap_or((config.t_max / 2, config.t_max));
            MemberSummary::Wigner {
                window,
                mean_distance: mean_over_window(&series[0], window),
            }
        }
    };

    Ok(MemberOutcome { id, series, summary, final_grid })
}

fn mean_over_window(series: &ObservableSeries, window: (u64, u64)) -> f64 {
    let vals: Vec<f64> = series.window(window).map(|(_, v)| v).collect();
    if vals.is_empty() {
        f64::NAN
    } else {
        vals.iter().sum::<f64>() / vals.len() as f64
    }
}

/// Run one experiment sweep. Members run sequentially; sectors and
/// summation blocks are spread over `threads` workers.
pub fn run_experiment(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<ExperimentOutcome, RunError> {
    let members = (0..config.members.len())
        .map(|idx| run_member(config, idx, threads))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentOutcome { config: config.clone(), members })
}

/// Linear-entropy sweep (optionally with the von Neumann series).
pub fn run_entropy_experiment(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<ExperimentOutcome, RunError> {
    expect_kind(config, ExperimentKind::Entropy)?;
    run_experiment(config, threads)
}

/// Standard-deviation sweep with the late-time slope summary.
pub fn run_variance_experiment(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<ExperimentOutcome, RunError> {
    expect_kind(config, ExperimentKind::Variance)?;
    run_experiment(config, threads)
}

/// Phase-space-distance sweep against the classical random walk.
pub fn run_wigner_experiment(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<ExperimentOutcome, RunError> {
    expect_kind(config, ExperimentKind::Wigner)?;
    run_experiment(config, threads)
}

fn expect_kind(config: &ExperimentConfig, kind: ExperimentKind) -> Result<(), RunError> {
    if config.kind != kind {
        return Err(RunError::Config(format!(
            "experiment `{}` has kind `{}`, expected `{}`",
            config.name,
            config.kind.as_str(),
            kind.as_str()
        )));
    }
    Ok(())
}
