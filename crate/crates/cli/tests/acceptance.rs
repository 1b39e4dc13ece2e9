#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). Criteria run one at a time behind a
//! lock so that the timed budgets are measured without interference.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use bakerwalk_cli::{parse_config, run_experiment, ExperimentConfig, MemberSummary};
use bakerwalk_core::*;

const THREADS: usize = 4;

fn lock() -> MutexGuard<'static, ()> {
    static GATE: OnceLock<Mutex<()>> = OnceLock::new();
    GATE.get_or_init(|| Mutex::new(()))
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn report(criterion: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {criterion}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn config(text: &str) -> ExperimentConfig {
    parse_config(text).expect("valid acceptance config").remove(0)
}

fn entropy_sweep(name: &str, ring: usize, t_max: u64, stride: &str, angles: f64, coin: &str, members: &str, window: Option<(u64, u64)>) -> ExperimentConfig {
    let window_line = match window {
        Some((a, b)) => format!("window = {a} {b}\n"),
        None => String::new(),
    };
    config(&format!(
        "[experiment]\nname = {name}\nkind = entropy\nring_size = {ring}\nt_max = {t_max}\n\
         stride = {stride}\neta = {angles}\nkappa = {angles}\ncoin = {coin}\nmembers = {members}\n{window_line}"
    ))
}

fn variance_sweep(name: &str, ring: usize, t_max: u64, angles: f64, coin: &str, members: &str, window: (u64, u64)) -> ExperimentConfig {
    config(&format!(
        "[experiment]\nname = {name}\nkind = variance\nring_size = {ring}\nt_max = {t_max}\n\
         eta = {angles}\nkappa = {angles}\ncoin = {coin}\nmembers = {members}\nwindow = {} {}\n",
        window.0, window.1
    ))
}

#[test]
fn criterion_1_hadamard_walk_limit() {
    let _gate = lock();
    let started = Instant::now();
    let cfg = variance_sweep("c1", 512, 200, 0.0, "zero", "q1n1", (100, 200));
    let outcome = run_experiment(&cfg, THREADS).expect("run");
    let slope = match outcome.members[0].summary {
        MemberSummary::Variance { slope: Some(s), .. } => s,
        ref other => panic!("missing slope: {other:?}"),
    };
    let elapsed = started.elapsed();
    let target = (3.0 - 2.0 * 2f64.sqrt() + 1.0) / (4.0 * 2f64.sqrt());
    let rel_err = ((slope * slope - target) / target).abs();
    let in_budget = elapsed.as_secs_f64() < 5.0;
    let pass = report(
        "1 (single-coin walk limit)",
        rel_err <= 0.10 && in_budget,
        &format!(
            "slope^2 = {:.6} vs {target:.6} (rel err {:.2}%), runtime {:.2?} (< 5 s: {in_budget})",
            slope * slope,
            rel_err * 100.0,
            elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_regular_environment_saturation() {
    let _gate = lock();
    let started = Instant::now();
    let cfg = entropy_sweep("c2", 1024, 400, "1", 0.5, "plus_i", "q7n7", Some((50, 400)));
    let outcome = run_experiment(&cfg, THREADS).expect("run");
    let (s0, period) = match outcome.members[0].summary {
        MemberSummary::Entropy { saturation, period, .. } => (saturation, period),
        ref other => panic!("missing saturation: {other:?}"),
    };
    let elapsed = started.elapsed();
    let s0_ok = (s0 - 2.8).abs() <= 0.2;
    let period_ok = period.map(|p| (p - 7.0).abs() <= 0.5).unwrap_or(false);
    let in_budget = elapsed.as_secs_f64() < 30.0;
    let pass = report(
        "2 (regular-environment saturation)",
        s0_ok && period_ok && in_budget,
        &format!(
            "S0 = {s0:.4} (2.8 +- 0.2), period = {period:?} (7 +- 0.5), runtime {elapsed:.2?} (< 30 s: {in_budget})"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_upper_bound_law() {
    let _gate = lock();
    let mut violations = Vec::new();
    for qubits in 3..=8usize {
        let t_max = 12 * qubits as u64;
        let ring = (2 * t_max as usize + 2).next_power_of_two();
        for coin in ["zero", "plus_3pi4", "plus_i"] {
            let cfg = entropy_sweep(
                "c3",
                ring,
                t_max,
                "1",
                0.0,
                coin,
                &format!("q{qubits}n{qubits}"),
                None,
            );
            let outcome = run_experiment(&cfg, THREADS).expect("run");
            let s0 = match outcome.members[0].summary {
                MemberSummary::Entropy { saturation, .. } => saturation,
                ref other => panic!("missing saturation: {other:?}"),
            };
            let bound = (qubits as f64).log2() + 0.1;
            println!(
                "    N={qubits} coin={coin}: S0 = {s0:.4}, bound = {bound:.4} -> {}",
                if s0 <= bound { "ok" } else { "violated" }
            );
            if s0 > bound {
                violations.push(format!("N={qubits}/{coin}: {s0:.3} > {bound:.3}"));
            }
        }
    }
    let pass = report(
        "3 (saturation upper-bound law)",
        violations.is_empty(),
        &if violations.is_empty() {
            "S0 <= log2(N) + 0.1 for all 18 (N, coin) combinations".to_string()
        } else {
            format!("{} of 18 combinations exceed the bound: {}", violations.len(), violations.join("; "))
        },
    );
    assert!(pass);
}

#[test]
fn criterion_4_universal_collapse() {
    let _gate = lock();
    let mut curves: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
    for qubits in 4..=8usize {
        let t_max = 12 * qubits as u64;
        let ring = (2 * t_max as usize + 2).next_power_of_two();
        let cfg = entropy_sweep("c4", ring, t_max, "1", 0.0, "plus_i", &format!("q{qubits}n{qubits}"), None);
        let outcome = run_experiment(&cfg, THREADS).expect("run");
        let member = &outcome.members[0];
        let s0 = match member.summary {
            MemberSummary::Entropy { saturation, .. } => saturation,
            ref other => panic!("missing saturation: {other:?}"),
        };
        let series = member.primary_series();
        let curve: Vec<(f64, f64)> = series
            .times()
            .iter()
            .zip(series.values())
            .map(|(&t, &v)| (t as f64 / qubits as f64, v / s0))
            .collect();
        curves.push((qubits, curve));
    }
    let interp = |curve: &[(f64, f64)], x: f64| -> f64 {
        let idx = curve.partition_point(|p| p.0 < x).clamp(1, curve.len() - 1);
        let (a, b) = (curve[idx - 1], curve[idx]);
        if b.0 == a.0 {
            a.1
        } else {
            a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
        }
    };
    let mut worst = (0.0f64, 0usize, 0usize);
    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            let mut tau = 2.0;
            while tau <= 10.0 + 1e-9 {
                let d = (interp(&curves[i].1, tau) - interp(&curves[j].1, tau)).abs();
                if d > worst.0 {
                    worst = (d, curves[i].0, curves[j].0);
                }
                tau += 0.25;
            }
        }
    }
    let pass = report(
        "4 (universal collapse)",
        worst.0 <= 0.1,
        &format!(
            "worst pairwise |S/S0| gap on t/N in [2, 10] is {:.4} (N={} vs N={}), limit 0.1",
            worst.0, worst.1, worst.2
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_chaotic_vs_regular_ordering() {
    let _gate = lock();
    let cfg = entropy_sweep(
        "c5",
        1024,
        400,
        "5",
        0.5,
        "plus_i",
        "q7n1 q7n2 q7n3 q7n4 q7n5 q7n6 q7n7 g130",
        Some((50, 400)),
    );
    let outcome = run_experiment(&cfg, THREADS).expect("run");
    let regular_s0 = match outcome.members[6].summary {
        MemberSummary::Entropy { saturation, .. } => saturation,
        ref other => panic!("missing saturation: {other:?}"),
    };
    let late_mean = |m: &bakerwalk_cli::MemberOutcome| {
        let vals: Vec<f64> = m.primary_series().window((360, 400)).map(|(_, v)| v).collect();
        vals.iter().sum::<f64>() / vals.len() as f64
    };
    let mut failures = Vec::new();
    for member in &outcome.members[..6] {
        let series = member.primary_series();
        let min_after: f64 =
            series.window((100, 400)).map(|(_, v)| v).fold(f64::INFINITY, f64::min);
        let early: Vec<f64> = series.window((100, 200)).map(|(_, v)| v).collect();
        let late: Vec<f64> = series.window((300, 400)).map(|(_, v)| v).collect();
        let early = early.iter().sum::<f64>() / early.len() as f64;
        let late = late.iter().sum::<f64>() / late.len() as f64;
        if min_after <= regular_s0 {
            failures.push(format!("{}: min S_L after t=100 is {min_after:.3} <= S0 {regular_s0:.3}", member.id));
        }
        if late <= early {
            failures.push(format!("{}: not growing ({late:.3} <= {early:.3})", member.id));
        }
    }
    let g130 = late_mean(&outcome.members[7]);
    for member in &outcome.members[..7] {
        let m = late_mean(member);
        if g130 <= m {
            failures.push(format!("g130 late mean {g130:.3} <= {} {m:.3}", member.id));
        }
    }
    let pass = report(
        "5 (chaotic-vs-regular ordering)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("all n<7 exceed S0 = {regular_s0:.3} beyond t=100 and keep growing; g130 late mean {g130:.3} tops all q7 members")
        } else {
            failures.join("; ")
        },
    );
    assert!(pass);
}

#[test]
fn criterion_6_short_time_indistinguishability() {
    let _gate = lock();
    let mut detail = Vec::new();
    let mut all_in_band = true;
    for angles in [0.5, 0.0] {
        let cfg = variance_sweep(
            "c6",
            512,
            200,
            angles,
            "plus_i",
            "q7n1 q7n2 q7n3 q7n4 q7n5 q7n6 q7n7",
            (100, 200),
        );
        let outcome = run_experiment(&cfg, THREADS).expect("run");
        for member in &outcome.members {
            let alpha = match member.summary {
                MemberSummary::Variance { short_time_exponent: Some(a), .. } => a,
                ref other => panic!("missing exponent: {other:?}"),
            };
            detail.push(format!("{}@{angles}: {alpha:.3}", member.id));
            if !(0.4..=0.6).contains(&alpha) {
                all_in_band = false;
            }
        }
    }
    let pass = report(
        "6 (short-time diffusive growth)",
        all_in_band,
        &format!("fitted exponents over t in [2, 7]: {} (band [0.4, 0.6])", detail.join(", ")),
    );
    assert!(pass);
}

#[test]
fn criterion_7_slope_trend() {
    let _gate = lock();
    let mut chaotic = Vec::new();
    let mut regular = Vec::new();
    for qubits in 4..=8usize {
        let cfg = variance_sweep(
            "c7",
            512,
            200,
            0.0,
            "zero",
            &format!("q{qubits}n1 q{qubits}n{qubits}"),
            (100, 200),
        );
        let outcome = run_experiment(&cfg, THREADS).expect("run");
        for (idx, bucket) in [(0usize, &mut chaotic), (1usize, &mut regular)] {
            match outcome.members[idx].summary {
                MemberSummary::Variance { slope: Some(s), .. } => bucket.push(s),
                ref other => panic!("missing slope: {other:?}"),
            }
        }
    }
    let monotone = chaotic.windows(2).all(|w| w[1] < w[0]);
    let max = regular.iter().cloned().fold(f64::MIN, f64::max);
    let min = regular.iter().cloned().fold(f64::MAX, f64::min);
    let variation = (max - min) / max;
    let pass = report(
        "7 (late-time slope trend)",
        monotone && variation < 0.20,
        &format!(
            "chaotic slopes {chaotic:.4?} monotone decreasing: {monotone}; regular slopes {regular:.4?} vary by {:.1}% (< 20%)",
            variation * 100.0
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_wigner_ordering() {
    let _gate = lock();
    let cfg = config(
        "[experiment]\nname = c8\nkind = wigner\nring_size = 64\nt_max = 100\n\
         eta = 0.5\nkappa = 0.5\ncoin = plus_i\nmembers = q7n1 q7n7\nwindow = 60 100\n",
    );
    let outcome = run_experiment(&cfg, THREADS).expect("run");
    let mean = |idx: usize| match outcome.members[idx].summary {
        MemberSummary::Wigner { mean_distance, .. } => mean_distance,
        ref other => panic!("missing distance: {other:?}"),
    };
    let chaotic = mean(0);
    let regular = mean(1);
    let pass = report(
        "8 (phase-space distance ordering)",
        regular > chaotic,
        &format!("late-time mean delta: regular {regular:.5} > chaotic {chaotic:.5}"),
    );
    assert!(pass);
}

// ---------------------------------------------------------------------------
// criterion 9: property suite
// ---------------------------------------------------------------------------

fn dense_of(op: impl Fn(&CoinVector) -> CoinVector, dim: usize) -> DenseUnitary {
    let cols: Vec<Vec<C64>> =
        (0..dim).map(|j| op(&CoinVector::basis(dim, j).unwrap()).into_amps()).collect();
    DenseUnitary::from_fn(dim, |r, c| cols[c][r])
}

fn kron(a: &DenseUnitary, b: &DenseUnitary) -> DenseUnitary {
    let (na, nb) = (a.dim(), b.dim());
    DenseUnitary::from_fn(na * nb, |r, c| a.at(r / nb, c / nb) * b.at(r % nb, c % nb))
}

#[test]
fn criterion_9_property_suite() {
    let _gate = lock();
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, pass: bool, detail: String| {
        println!("    {name}: {} ({detail})", if pass { "ok" } else { "violated" });
        if !pass {
            failures.push(format!("{name}: {detail}"));
        }
    };

    // unitarity of every preset operator member (1e-10)
    {
        let mut worst = 0.0f64;
        for angles in [FloquetAngles::ZERO, FloquetAngles::HALF] {
            for n in 1..=7usize {
                let dense = build_baker_applier(&BakerSpec::qubit_register(7, n, angles))
                    .unwrap()
                    .dense_matrix();
                worst = worst.max(dense.unitarity_error());
            }
            let dense =
                build_baker_applier(&BakerSpec::general_even(130, angles)).unwrap().dense_matrix();
            worst = worst.max(dense.unitarity_error());
        }
        check("operator unitarity", worst < 1e-10, format!("max deviation {worst:.2e}"));
    }

    // shift factorization, dense, N <= 5, both angle pairs (1e-12)
    {
        let mut worst = 0.0f64;
        for angles in [FloquetAngles::ZERO, FloquetAngles::HALF] {
            for total in 1..=5usize {
                let shape = RegisterShape::new(total).unwrap();
                for n in 1..=total {
                    let whole = build_baker_applier(&BakerSpec::qubit_register(total, n, angles))
                        .unwrap()
                        .dense_matrix();
                    let inner = build_baker_applier(&BakerSpec::qubit_register(
                        total - n + 1,
                        1,
                        angles,
                    ))
                    .unwrap()
                    .dense_matrix();
                    let lifted = kron(&DenseUnitary::identity(1 << (n - 1)), &inner);
                    let shift = dense_of(|v| qubit_shift(v, shape, n).unwrap(), shape.dim());
                    let composed = lifted.matmul(&shift).unwrap();
                    worst = worst.max(whole.max_entry_diff(&composed));
                }
            }
        }
        check("shift factorization (dense, N <= 5)", worst < 1e-12, format!("max diff {worst:.2e}"));
    }

    // sector evolution vs dense oracle (1e-10) for M <= 8, N <= 3, t <= 16
    {
        let mut worst = 0.0f64;
        for angles in [FloquetAngles::ZERO, FloquetAngles::HALF] {
            for ring in [4usize, 8] {
                for qubits in 1..=3usize {
                    for n in 1..=qubits {
                        let spec = BakerSpec::qubit_register(qubits, n, angles);
                        let applier = build_baker_applier(&spec).unwrap();
                        let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; qubits]);
                        let mut state = init_state(ring, &coin).unwrap();
                        evolve(&mut state, 16, &applier).unwrap();
                        let got = walk::sectors_to_position_amplitudes(&state);
                        let expect = dense_oracle_evolve(ring, &coin, &spec, 16).unwrap();
                        let diff = got
                            .iter()
                            .zip(&expect)
                            .map(|(a, b)| (a - b).norm())
                            .fold(0.0, f64::max);
                        worst = worst.max(diff);
                    }
                }
            }
        }
        check("sector vs dense oracle", worst < 1e-10, format!("max amplitude diff {worst:.2e}"));
    }

    // norm conservation over 10^4 steps (1e-10)
    {
        let spec = BakerSpec::qubit_register(3, 2, FloquetAngles::HALF);
        let applier = build_baker_applier(&spec).unwrap();
        let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 3]);
        let mut state = init_state(16, &coin).unwrap();
        evolve(&mut state, 10_000, &applier).unwrap();
        let drift = (state.total_norm_sqr() - 1.0).abs();
        check("norm conservation over 1e4 steps", drift < 1e-10, format!("drift {drift:.2e}"));
    }

    // entropy bounds and S_L <= S_V along an evolution
    {
        let spec = BakerSpec::qubit_register(3, 1, FloquetAngles::HALF);
        let applier = build_baker_applier(&spec).unwrap();
        let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 3]);
        let mut state = init_state(32, &coin).unwrap();
        let mut ok = true;
        let mut detail = String::new();
        for _ in 0..40 {
            evolve(&mut state, 1, &applier).unwrap();
            let rho = reduced_density(&state);
            let s_lin = linear_entropy(&rho);
            let s_vn = von_neumann_entropy(&rho).unwrap();
            let cap = 3.0 + 1e-9; // log2 min(M, D) = log2 8
            if !(s_lin >= -1e-9 && s_lin <= cap && s_lin <= s_vn + 1e-9) {
                ok = false;
                detail = format!("t={} S_L={s_lin} S_V={s_vn}", state.time());
                break;
            }
        }
        check("entropy bounds and S_L <= S_V", ok, if detail.is_empty() { "0 <= S_L <= log2 min(M,D), S_L <= S_V".into() } else { detail });
    }

    // position distribution normalization (1e-10)
    {
        let spec = BakerSpec::qubit_register(2, 1, FloquetAngles::HALF);
        let applier = build_baker_applier(&spec).unwrap();
        let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 2]);
        let mut state = init_state(64, &coin).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..25 {
            evolve(&mut state, 1, &applier).unwrap();
            let dist = position_distribution(&state);
            worst = worst.max((dist.iter().sum::<f64>() - 1.0).abs());
            worst = worst.max(dist.iter().cloned().fold(0.0, |acc, p| acc.max(-p)));
        }
        check("position distribution normalization", worst < 1e-10, format!("max deviation {worst:.2e}"));
    }

    // Wigner reality plus point-operator Hermiticity/unitarity/orthogonality (M <= 6)
    {
        let mut worst_imag = 0.0f64;
        let mut worst_op = 0.0f64;
        let mut ortho_ok = true;
        for m in [3usize, 4, 6] {
            let side = 2 * m;
            let ops: Vec<Vec<DenseUnitary>> = (0..side)
                .map(|q| (0..side).map(|p| phase_point_operator(q, p, m).unwrap()).collect())
                .collect();
            for q in 0..side {
                for p in 0..side {
                    worst_op = worst_op.max(ops[q][p].hermiticity_error());
                    worst_op = worst_op.max(ops[q][p].unitarity_error());
                }
            }
            for q1 in 0..side {
                for p1 in 0..side {
                    for q2 in 0..side {
                        for p2 in 0..side {
                            let tr = ops[q1][p1].matmul(&ops[q2][p2]).unwrap().trace();
                            let same = (q1 % m, p1 % m) == (q2 % m, p2 % m);
                            let expect_mag = if same { m as f64 } else { 0.0 };
                            if (tr.norm() - expect_mag).abs() > 1e-10 {
                                ortho_ok = false;
                            }
                        }
                    }
                }
            }
            // reality on an evolved state
            let spec = BakerSpec::qubit_register(2, 1, FloquetAngles::HALF);
            let applier = build_baker_applier(&spec).unwrap();
            let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 2]);
            let mut state = init_state(m, &coin).unwrap();
            evolve(&mut state, 5, &applier).unwrap();
            let rho = reduced_density(&state).to_position().unwrap();
            for q in 0..side {
                for p in 0..side {
                    let a = &ops[q][p];
                    let mut tr = C64::new(0.0, 0.0);
                    for r in 0..m {
                        for c in 0..m {
                            tr += rho.at(r, c) * a.at(c, r);
                        }
                    }
                    worst_imag = worst_imag.max((tr.im / m as f64).abs());
                }
            }
        }
        check(
            "Wigner reality and point-operator algebra",
            worst_imag < 1e-10 && worst_op < 1e-10 && ortho_ok,
            format!("max imag {worst_imag:.2e}, max op deviation {worst_op:.2e}, orthogonality {ortho_ok}"),
        );
    }

    // marginal reproduction (1e-10) at M <= 8
    {
        let mut worst = 0.0f64;
        for ring in [4usize, 8] {
            let spec = BakerSpec::qubit_register(2, 1, FloquetAngles::HALF);
            let applier = build_baker_applier(&spec).unwrap();
            let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 2]);
            let mut state = init_state(ring, &coin).unwrap();
            evolve(&mut state, ring as u64 / 2, &applier).unwrap();
            let rho = reduced_density(&state);
            let grid = wigner_from_density(&rho).unwrap();
            for (a, b) in grid.position_marginal().iter().zip(&position_distribution(&state)) {
                worst = worst.max((a - b).abs());
            }
            let momentum: Vec<f64> = (0..ring).map(|k| rho.at(k, k).re).collect();
            for (a, b) in grid.momentum_marginal().iter().zip(&momentum) {
                worst = worst.max((a - b).abs());
            }
        }
        check("marginal reproduction", worst < 1e-10, format!("max deviation {worst:.2e}"));
    }

    // evolution reversibility (1e-9)
    {
        let spec = BakerSpec::qubit_register(7, 3, FloquetAngles::HALF);
        let applier = build_baker_applier(&spec).unwrap();
        let coin = InitialCoinSpec::PerQubit(vec![QubitState::PlusI; 7]);
        let mut state = init_state(64, &coin).unwrap();
        let initial = state.clone();
        evolve(&mut state, 500, &applier).unwrap();
        evolve_inverse(&mut state, 500, &applier).unwrap();
        let diff = state
            .sectors_flat()
            .iter()
            .zip(initial.sectors_flat())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        check("evolution reversibility (t = 500)", diff < 1e-9, format!("max amplitude diff {diff:.2e}"));
    }

    // byte-identical rerun determinism through the binary
    {
        use std::process::Command;
        let cfg_text = "[experiment]\nname = det\nkind = entropy\nring_size = 64\nt_max = 30\n\
                        eta = 0.5\nkappa = 0.5\ncoin = plus_i\nmembers = q3n1 q3n3\n";
        let base = std::env::temp_dir().join(format!("bakerwalk_acc_det_{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&base);
        let mut contents: Vec<std::collections::BTreeMap<String, Vec<u8>>> = Vec::new();
        for (i, threads) in ["1", "4", "4"].iter().enumerate() {
            let dir = base.join(format!("run{i}"));
            std::fs::create_dir_all(&dir).unwrap();
            let cfg_path = dir.join("config.txt");
            std::fs::write(&cfg_path, cfg_text).unwrap();
            let status = Command::new(env!("CARGO_BIN_EXE_simulate"))
                .arg("--config")
                .arg(&cfg_path)
                .arg("--out")
                .arg(&dir)
                .args(["--threads", threads])
                .status()
                .unwrap();
            assert!(status.success());
            let mut files = std::collections::BTreeMap::new();
            for entry in std::fs::read_dir(&dir).unwrap() {
                let path = entry.unwrap().path();
                let name = path.file_name().unwrap().to_string_lossy().to_string();
                if name.ends_with(".csv") {
                    files.insert(name, std::fs::read(&path).unwrap());
                }
            }
            contents.push(files);
        }
        let identical = contents[0] == contents[1] && contents[1] == contents[2];
        let _ = std::fs::remove_dir_all(&base);
        check("byte-identical rerun determinism", identical, "two reruns and two thread counts".into());
    }

    let pass = report(
        "9 (property suite)",
        failures.is_empty(),
        &if failures.is_empty() {
            "all property checks hold at their stated tolerances".to_string()
        } else {
            failures.join("; ")
        },
    );
    assert!(pass);
}
