//! Scoped-thread helpers with fixed work decomposition.
//!
//! Parallel results must be bitwise-identical to a serial run, so the work
//! units (sectors, summation blocks) are fixed independently of the thread
//! count and reductions always fold in unit order.

use std::sync::atomic::{AtomicUsize, Ordering};

use bakerwalk_core::walk::evolve_sector;
use bakerwalk_core::{BakerApplier, SystemState};

/// Evaluate `task(i)` for `i in 0..n_tasks` on up to `threads` workers and
/// return the results in index order.
pub fn run_indexed<R, F>(n_tasks: usize, threads: usize, task: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let workers = threads.max(1).min(n_tasks);
    if workers <= 1 {
        return (0..n_tasks).map(task).collect();
    }
    let counter = AtomicUsize::new(0);
    let mut collected: Vec<(usize, R)> = Vec::with_capacity(n_tasks);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = counter.fetch_add(1, Ordering::Relaxed);
                        if i >= n_tasks {
                            break;
                        }
                        local.push((i, task(i)));
                    }
                    local
                })
            })
            .collect();
        for handle in handles {
            collected.extend(handle.join().expect("worker panicked"));
        }
    });
    collected.sort_by_key(|(i, _)| *i);
    collected.into_iter().map(|(_, r)| r).collect()
}

/// Advance every momentum sector by `steps`, splitting sectors across
/// workers. Each sector's update is independent, so any split gives the
/// same amplitudes.
pub fn evolve_parallel(
    state: &mut SystemState,
    steps: u64,
    applier: &BakerApplier,
    threads: usize,
) {
    if steps == 0 {
        return;
    }
    let ring = state.ring_size();
    let dim = state.dim();
    let workers = threads.max(1).min(ring);
    if workers <= 1 {
        let mut scratch = Vec::new();
        for (k, sector) in state.sectors_flat_mut().chunks_mut(dim).enumerate() {
            evolve_sector(sector, k, ring, applier, steps, &mut scratch);
        }
    } else {
        let mut sectors: Vec<(usize, &mut [bakerwalk_core::C64])> =
            state.sectors_flat_mut().chunks_mut(dim).enumerate().collect();
        let per_worker = sectors.len().div_ceil(workers);
        std::thread::scope(|scope| {
            for chunk in sectors.chunks_mut(per_worker) {
                scope.spawn(move || {
                    let mut scratch = Vec::new();
                    for (k, sector) in chunk.iter_mut() {
                        evolve_sector(sector, *k, ring, applier, steps, &mut scratch);
                    }
                });
            }
        });
    }
    state.advance_time(steps);
}
