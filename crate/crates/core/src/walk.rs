//! Walker construction and time evolution in independent momentum sectors.
//!
//! On the ring the one-step operator is block diagonal in the walker's
//! momentum: sector `k` evolves by the coin operator followed by the phase
//! `exp(-i phi_k)` on the half of the coin basis with most significant qubit
//! 0 and `exp(+i phi_k)` on the other half, `phi_k = 2 pi k / M`. Sectors
//! never couple, so each can be stepped on its own; a dense full-space
//! evolution is kept as the validation oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::baker::{build_baker_applier, BakerApplier, BakerSpec};
use crate::error::{Error, Result};
use crate::fourier::CoinVector;
use crate::linalg::DenseUnitary;

/// Guard on the dense-oracle total dimension `M * D`.
pub const DENSE_ORACLE_GUARD: usize = 4096;

/// Single-qubit coin states used to assemble product initial conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QubitState {
    /// `|0>`
    Zero,
    /// `(|0> + i|1>)/sqrt(2)`
    PlusI,
    /// `(|0> + e^{i 3pi/4}|1>)/sqrt(2)`
    Plus3Pi4,
    /// Arbitrary `a|0> + b|1>` with `|a|^2 + |b|^2 = 1`.
    Custom { a: C64, b: C64 },
}

impl QubitState {
    fn amplitudes(&self) -> Result<(C64, C64)> {
        match *self {
            QubitState::Zero => Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
            QubitState::PlusI => {
                let r = 1.0 / libm::sqrt(2.0);
                Ok((C64::new(r, 0.0), C64::new(0.0, r)))
            }
            QubitState::Plus3Pi4 => {
                let r = 1.0 / libm::sqrt(2.0);
                let phase = 0.75 * core::f64::consts::PI;
                Ok((C64::new(r, 0.0), C64::new(r * libm::cos(phase), r * libm::sin(phase))))
            }
            QubitState::Custom { a, b } => {
                let norm = a.norm_sqr() + b.norm_sqr();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::NotNormalized { norm: libm::sqrt(norm) });
                }
                Ok((a, b))
            }
        }
    }
}

/// Initial coin state of the environment register.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCoinSpec {
    /// Product state over a qubit register; dimension `2^len`.
    PerQubit(Vec<QubitState>),
    /// The same single-qubit state repeated across a register of the given
    /// (even) dimension. For a power of two this is exactly the product
    /// state; otherwise the product amplitude pattern over
    /// `ceil(log2(dim))` bits is truncated to the first `dim` basis states
    /// and renormalized.
    Repeated { state: QubitState, dim: usize },
    /// Explicit amplitudes; must be normalized to 1 within 1e-12.
    Custom(CoinVector),
}

impl InitialCoinSpec {
    pub fn dim(&self) -> usize {
        match self {
            InitialCoinSpec::PerQubit(states) => 1usize << states.len(),
            InitialCoinSpec::Repeated { dim, .. } => *dim,
            InitialCoinSpec::Custom(v) => v.dim(),
        }
    }

    /// Build the normalized coin vector this spec describes.
    pub fn resolve(&self) -> Result<CoinVector> {
        match self {
            InitialCoinSpec::PerQubit(states) => {
                if states.is_empty() {
                    return Err(Error::InvalidDimension(0));
                }
                // each later qubit extends the index at the bottom, keeping
                // qubit 1 most significant
                let mut amps = vec![C64::new(1.0, 0.0)];
                for state in states {
                    let (a, b) = state.amplitudes()?;
                    let mut next = Vec::with_capacity(amps.len() * 2);
                    for &cur in &amps {
                        next.push(cur * a);
                        next.push(cur * b);
                    }
                    amps = next;
                }
                CoinVector::new(amps)
            }
            InitialCoinSpec::Repeated { state, dim } => {
                if *dim < 2 || *dim % 2 != 0 {
                    return Err(Error::InvalidDimension(*dim));
                }
                let bits = usize::BITS as usize - (*dim - 1).leading_zeros() as usize;
                let (a, b) = state.amplitudes()?;
                let mut amps = Vec::with_capacity(*dim);
                for j in 0..*dim {
                    let ones = (j as u64).count_ones() as i32;
                    let zeros = bits as i32 - ones;
                    amps.push(a.powi(zeros) * b.powi(ones));
                }
                let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
                if norm_sqr < 1e-12 {
                    return Err(Error::NotNormalized { norm: libm::sqrt(norm_sqr) });
                }
                let scale = 1.0 / libm::sqrt(norm_sqr);
                for z in &mut amps {
                    *z *= scale;
                }
                CoinVector::new(amps)
            }
            InitialCoinSpec::Custom(v) => {
                let norm = v.norm();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::NotNormalized { norm });
                }
                Ok(v.clone())
            }
        }
    }
}

/// Pure state of the walker (x) coin system, stored as one coin vector per
/// momentum sector. Sector `k` occupies `amps[k*dim .. (k+1)*dim]` and
/// carries its `1/sqrt(M)` share of the total norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemState {
    ring_size: usize,
    dim: usize,
    time: u64,
    amps: Vec<C64>,
}

impl SystemState {
    pub fn ring_size(&self) -> usize {
        self.ring_size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn sector(&self, k: usize) -> &[C64] {
        &self.amps[k * self.dim..(k + 1) * self.dim]
    }

    /// All sectors as one flat buffer, sector-major.
    pub fn sectors_flat(&self) -> &[C64] {
        &self.amps
    }

    /// Mutable flat access for external (for example parallel) drivers.
    /// Chunk by `dim()` to recover per-sector slices.
    pub fn sectors_flat_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    /// Advance the recorded time without touching amplitudes. For drivers
    /// that step sectors through `evolve_sector` directly.
    pub fn advance_time(&mut self, steps: u64) {
        self.time += steps;
    }

    pub fn total_norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `|0>_position (x) |coin>`: every momentum sector holds `coin / sqrt(M)`.
pub fn init_state(ring_size: usize, coin: &InitialCoinSpec) -> Result<SystemState> {
    if ring_size < 2 {
        return Err(Error::InvalidDimension(ring_size));
    }
    let coin_vec = coin.resolve()?;
    let dim = coin_vec.dim();
    let share = 1.0 / libm::sqrt(ring_size as f64);
    let mut amps = Vec::with_capacity(ring_size * dim);
    for _ in 0..ring_size {
        amps.extend(coin_vec.amps().iter().map(|z| z * share));
    }
    Ok(SystemState { ring_size, dim, time: 0, amps })
}

/// Momentum-sector phases for sector `k`: `exp(-i phi_k)` on the lower half
/// of the coin basis, `exp(+i phi_k)` on the upper half.
fn sector_phases(k: usize, ring_size: usize) -> (C64, C64) {
    let phi = TAU * (k as f64) / (ring_size as f64);
    let (s, c) = (libm::sin(phi), libm::cos(phi));
    (C64::new(c, -s), C64::new(c, s))
}

fn step_sector_in_place(
    sector: &mut [C64],
    lower: C64,
    upper: C64,
    applier: &BakerApplier,
    scratch: &mut Vec<C64>,
) {
    applier.apply_with(sector, scratch);
    let half = sector.len() / 2;
    for z in &mut sector[..half] {
        *z *= lower;
    }
    for z in &mut sector[half..] {
        *z *= upper;
    }
}

fn step_sector_inverse_in_place(
    sector: &mut [C64],
    lower: C64,
    upper: C64,
    applier: &BakerApplier,
    scratch: &mut Vec<C64>,
) {
    let half = sector.len() / 2;
    for z in &mut sector[..half] {
        *z *= lower.conj();
    }
    for z in &mut sector[half..] {
        *z *= upper.conj();
    }
    applier.apply_inverse_with(sector, scratch);
}

/// Advance one sector by `steps` applications of the one-step operator.
///
/// Exposed so external drivers can evolve sectors independently (and in
/// parallel); results are identical to `evolve` on the whole state.
pub fn evolve_sector(
    sector: &mut [C64],
    k: usize,
    ring_size: usize,
    applier: &BakerApplier,
    steps: u64,
    scratch: &mut Vec<C64>,
) {
    let (lower, upper) = sector_phases(k, ring_size);
    for _ in 0..steps {
        step_sector_in_place(sector, lower, upper, applier, scratch);
    }
}

/// Inverse counterpart of `evolve_sector`.
pub fn evolve_sector_inverse(
    sector: &mut [C64],
    k: usize,
    ring_size: usize,
    applier: &BakerApplier,
    steps: u64,
    scratch: &mut Vec<C64>,
) {
    let (lower, upper) = sector_phases(k, ring_size);
    for _ in 0..steps {
        step_sector_inverse_in_place(sector, lower, upper, applier, scratch);
    }
}

/// One step of sector `k`: coin operator first, then the momentum phases.
pub fn sector_step(
    v: &CoinVector,
    k: usize,
    ring_size: usize,
    applier: &BakerApplier,
) -> Result<CoinVector> {
    if !v.dim().is_multiple_of(2) {
        return Err(Error::InvalidDimension(v.dim()));
    }
    if v.dim() != applier.dim() {
        return Err(Error::DimensionMismatch { expected: applier.dim(), got: v.dim() });
    }
    if k >= ring_size {
        return Err(Error::IndexOutOfRange { index: k, limit: ring_size });
    }
    let mut out = v.clone();
    let mut scratch = Vec::new();
    evolve_sector(out.amps_mut(), k, ring_size, applier, 1, &mut scratch);
    Ok(out)
}

/// Advance the whole state by `steps`, sector by sector.
pub fn evolve(state: &mut SystemState, steps: u64, applier: &BakerApplier) -> Result<()> {
    if applier.dim() != state.dim {
        return Err(Error::DimensionMismatch { expected: state.dim, got: applier.dim() });
    }
    let dim = state.dim;
    let ring = state.ring_size;
    let mut scratch = Vec::new();
    for (k, sector) in state.amps.chunks_mut(dim).enumerate() {
        evolve_sector(sector, k, ring, applier, steps, &mut scratch);
    }
    state.time += steps;
    Ok(())
}

/// Undo `steps` applications of the one-step operator.
pub fn evolve_inverse(state: &mut SystemState, steps: u64, applier: &BakerApplier) -> Result<()> {
    if applier.dim() != state.dim {
        return Err(Error::DimensionMismatch { expected: state.dim, got: applier.dim() });
    }
    if steps > state.time {
        return Err(Error::TimeUnderflow { have: state.time, requested: steps });
    }
    let dim = state.dim;
    let ring = state.ring_size;
    let mut scratch = Vec::new();
    for (k, sector) in state.amps.chunks_mut(dim).enumerate() {
        evolve_sector_inverse(sector, k, ring, applier, steps, &mut scratch);
    }
    state.time -= steps;
    Ok(())
}

/// Walker translation in the position basis, normalized so that the momentum
/// state `|k>` (built with the `exp(-i 2pi jk/M)` kernel) is an eigenvector
/// with eigenvalue `exp(-i 2pi k/M)`.
pub fn position_step_matrix(ring_size: usize) -> DenseUnitary {
    DenseUnitary::from_fn(ring_size, |r, c| {
        if r == (c + ring_size - 1) % ring_size {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Transform the sector representation to position-basis amplitudes,
/// returned as a flat vector indexed `x * dim + j`.
pub fn sectors_to_position_amplitudes(state: &SystemState) -> Vec<C64> {
    let m = state.ring_size;
    let dim = state.dim;
    let plan = crate::fft::FftPlan::new(m);
    let norm = 1.0 / libm::sqrt(m as f64);
    let mut out = vec![C64::new(0.0, 0.0); m * dim];
    let mut line = vec![C64::new(0.0, 0.0); m];
    let mut scratch = Vec::new();
    for j in 0..dim {
        for (k, slot) in line.iter_mut().enumerate() {
            *slot = state.amps[k * dim + j];
        }
        plan.forward(&mut line, &mut scratch);
        for (x, value) in line.iter().enumerate() {
            out[x * dim + j] = value * norm;
        }
    }
    out
}

/// Dense full-space evolution oracle.
///
/// Builds the one-step operator as an `MD x MD` matrix in the position (x)
/// coin basis — translation conditioned on the most significant coin index
/// composed with the coin operator — applies it `steps` times to
/// `|0> (x) |coin>`, and returns the final amplitudes indexed `x * dim + j`.
pub fn dense_oracle_evolve(
    ring_size: usize,
    coin: &InitialCoinSpec,
    spec: &BakerSpec,
    steps: u64,
) -> Result<Vec<C64>> {
    if ring_size < 2 {
        return Err(Error::InvalidDimension(ring_size));
    }
    let dim = spec.dim();
    let total = ring_size
        .checked_mul(dim)
        .ok_or(Error::SizeGuardExceeded { limit: DENSE_ORACLE_GUARD, requested: usize::MAX })?;
    if total > DENSE_ORACLE_GUARD {
        return Err(Error::SizeGuardExceeded { limit: DENSE_ORACLE_GUARD, requested: total });
    }
    let coin_vec = coin.resolve()?;
    if coin_vec.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: coin_vec.dim() });
    }
    let step = dense_step_matrix(ring_size, spec)?;
    let mut psi = vec![C64::new(0.0, 0.0); total];
    psi[..dim].copy_from_slice(coin_vec.amps());
    for _ in 0..steps {
        psi = step.mul_vec(&psi)?;
    }
    Ok(psi)
}

/// Dense one-step operator used by the oracle.
pub fn dense_step_matrix(ring_size: usize, spec: &BakerSpec) -> Result<DenseUnitary> {
    let dim = spec.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::InvalidDimension(dim));
    }
    let applier = build_baker_applier(spec)?;
    let coin_op = applier.dense_matrix();
    let total = ring_size * dim;
    let half = dim / 2;
    let mat = DenseUnitary::from_fn(total, |row, col| {
        let (xr, jr) = (row / dim, row % dim);
        let (xc, jc) = (col / dim, col % dim);
        let hops_down = xr == (xc + ring_size - 1) % ring_size;
        let hops_up = xr == (xc + 1) % ring_size;
        if (jr < half && hops_down) || (jr >= half && hops_up) {
            coin_op.at(jr, jc)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    debug_assert!(mat.unitarity_error() < 1e-10);
    Ok(mat)
}
