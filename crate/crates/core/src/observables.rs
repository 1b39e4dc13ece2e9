//! Reduced state of the walker and the measured quantities derived from it.
//!
//! Entropies are reported in bits. For a pure total state the walker and the
//! coin share a spectrum, so purity-based quantities are evaluated on the
//! coin side (`D x D`) instead of the ring side (`M x M`); the momentum-basis
//! reduced density matrix remains the contract type and the two routes are
//! checked against each other in tests. Coin-side accumulation proceeds in
//! fixed blocks of [`GRAM_BLOCK`] sectors so that serial and parallel drivers
//! produce bitwise-identical sums.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fourier::{fourier_matrix, FloquetAngles};
use crate::linalg::{hermitian_eigenvalues, matmul_flat};
use crate::walk::{sectors_to_position_amplitudes, SystemState};

/// Basis in which a reduced density matrix is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityBasis {
    Momentum,
    Position,
}

/// Walker's reduced density matrix: `M x M`, Hermitian, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    ring_size: usize,
    basis: DensityBasis,
    entries: Vec<C64>,
}

impl ReducedDensity {
    pub fn from_entries(ring_size: usize, basis: DensityBasis, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != ring_size * ring_size {
            return Err(Error::DimensionMismatch {
                expected: ring_size * ring_size,
                got: entries.len(),
            });
        }
        Ok(ReducedDensity { ring_size, basis, entries })
    }

    pub fn ring_size(&self) -> usize {
        self.ring_size
    }

    pub fn basis(&self) -> DensityBasis {
        self.basis
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.ring_size + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.ring_size).map(|i| self.at(i, i)).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.ring_size {
            for c in r..self.ring_size {
                let dev = (self.at(r, c) - self.at(c, r).conj()).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Conjugate by the ring's plain Fourier matrix to reach the position
    /// basis. No-op if already there.
    pub fn to_position(&self) -> Result<ReducedDensity> {
        if self.basis == DensityBasis::Position {
            return Ok(self.clone());
        }
        let f = fourier_matrix(self.ring_size, FloquetAngles::ZERO)?;
        let fr = matmul_flat(f.entries(), &self.entries, self.ring_size);
        let entries = matmul_flat(&fr, f.dagger().entries(), self.ring_size);
        Ok(ReducedDensity { ring_size: self.ring_size, basis: DensityBasis::Position, entries })
    }
}

/// Momentum-basis reduced density of the walker: entry `(k, k')` is the
/// inner product of sector `k'` with sector `k`, which already carries the
/// `1/M` normalization.
pub fn reduced_density(state: &SystemState) -> ReducedDensity {
    let m = state.ring_size();
    let mut entries = vec![C64::new(0.0, 0.0); m * m];
    for k in 0..m {
        let sk = state.sector(k);
        for kp in k..m {
            let skp = state.sector(kp);
            let mut acc = C64::new(0.0, 0.0);
            for (a, b) in skp.iter().zip(sk) {
                acc += a.conj() * b;
            }
            entries[k * m + kp] = acc;
            entries[kp * m + k] = acc.conj();
        }
    }
    ReducedDensity { ring_size: m, basis: DensityBasis::Momentum, entries }
}

/// `Tr[rho^2]` of a reduced density matrix.
pub fn purity(rho: &ReducedDensity) -> f64 {
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// Linear entropy `-log2 Tr[rho^2]`, in bits.
pub fn linear_entropy(rho: &ReducedDensity) -> f64 {
    -libm::log2(purity(rho))
}

/// Number of sectors accumulated per summation block. Fixed so that any
/// scheduling of blocks reproduces the same floating-point result.
pub const GRAM_BLOCK: usize = 32;

/// Fixed block decomposition of the sector range.
pub fn gram_block_ranges(ring_size: usize) -> impl Iterator<Item = Range<usize>> {
    (0..ring_size.div_ceil(GRAM_BLOCK)).map(move |b| {
        let start = b * GRAM_BLOCK;
        start..(start + GRAM_BLOCK).min(ring_size)
    })
}

/// Coin-side Gram contribution of one sector block: the upper triangle of
/// `sum_k |s_k><s_k|` over `k` in `range`, stored row-major with the lower
/// triangle left at zero.
pub fn coin_gram_block(state: &SystemState, range: Range<usize>) -> Vec<C64> {
    let dim = state.dim();
    let mut gram = vec![C64::new(0.0, 0.0); dim * dim];
    for k in range {
        let s = state.sector(k);
        for (a, &sa) in s.iter().enumerate() {
            let row = &mut gram[a * dim + a..(a + 1) * dim];
            for (g, &sb) in row.iter_mut().zip(&s[a..]) {
                *g += sa * sb.conj();
            }
        }
    }
    gram
}

/// Accumulate one block partial into a running Gram sum.
pub fn add_gram(into: &mut [C64], block: &[C64]) {
    debug_assert_eq!(into.len(), block.len());
    for (a, b) in into.iter_mut().zip(block) {
        *a += b;
    }
}

/// `Tr[G^2]` of an upper-triangular-stored Hermitian Gram matrix.
pub fn purity_from_coin_gram(gram: &[C64], dim: usize) -> f64 {
    debug_assert_eq!(gram.len(), dim * dim);
    let mut acc = 0.0f64;
    for a in 0..dim {
        acc += gram[a * dim + a].norm_sqr();
        for b in (a + 1)..dim {
            acc += 2.0 * gram[a * dim + b].norm_sqr();
        }
    }
    acc
}

/// Full coin-side Gram of the state, blocked summation.
pub fn coin_gram(state: &SystemState) -> Vec<C64> {
    let dim = state.dim();
    let mut total = vec![C64::new(0.0, 0.0); dim * dim];
    for range in gram_block_ranges(state.ring_size()) {
        let block = coin_gram_block(state, range);
        add_gram(&mut total, &block);
    }
    total
}

/// Linear entropy computed directly from the state via the coin-side Gram.
///
/// Equals `linear_entropy(reduced_density(state))` for pure states; the two
/// subsystems of a pure state share their nonzero spectrum.
pub fn linear_entropy_of_state(state: &SystemState) -> f64 {
    let gram = coin_gram(state);
    -libm::log2(purity_from_coin_gram(&gram, state.dim()))
}

const EIGENVALUE_CLIP: f64 = 1e-12;

fn entropy_from_eigenvalues(eigs: &[f64]) -> f64 {
    let mut acc = 0.0f64;
    for &lambda in eigs {
        if lambda > EIGENVALUE_CLIP {
            acc -= lambda * libm::log2(lambda);
        }
    }
    acc
}

/// Von Neumann entropy `-sum lambda log2 lambda`, in bits.
pub fn von_neumann_entropy(rho: &ReducedDensity) -> Result<f64> {
    let eigs = hermitian_eigenvalues(&rho.entries, rho.ring_size)?;
    Ok(entropy_from_eigenvalues(&eigs))
}

/// Von Neumann entropy evaluated on the coin side of the state.
pub fn von_neumann_entropy_of_state(state: &SystemState) -> Result<f64> {
    let dim = state.dim();
    let mut gram = coin_gram(state);
    for a in 0..dim {
        for b in (a + 1)..dim {
            gram[b * dim + a] = gram[a * dim + b].conj();
        }
    }
    let eigs = hermitian_eigenvalues(&gram, dim)?;
    Ok(entropy_from_eigenvalues(&eigs))
}

/// Probability of finding the walker at each ring site.
pub fn position_distribution(state: &SystemState) -> Vec<f64> {
    let m = state.ring_size();
    let dim = state.dim();
    let amps = sectors_to_position_amplitudes(state);
    (0..m)
        .map(|x| amps[x * dim..(x + 1) * dim].iter().map(|z| z.norm_sqr()).sum())
        .collect()
}

/// Signed site coordinate for ring index `i`: values run over
/// `-floor(M/2) ..= ceil(M/2) - 1` with `x mod M = i`.
pub fn signed_position(index: usize, ring_size: usize) -> i64 {
    let half_up = ring_size.div_ceil(2);
    if index < half_up {
        index as i64
    } else {
        index as i64 - ring_size as i64
    }
}

/// Variance of the position distribution with signed site coordinates.
///
/// Fails if more than `1e-8` of the probability sits at distance
/// `>= M/2 - 1` from the origin: the wavefront has reached the antipode and
/// signed moments are no longer meaningful.
pub fn position_variance(dist: &[f64]) -> Result<f64> {
    let m = dist.len();
    if m < 2 {
        return Err(Error::InvalidDimension(m));
    }
    let threshold = m as f64 / 2.0 - 1.0;
    let mut leaked = 0.0f64;
    let mut mean = 0.0f64;
    let mut second = 0.0f64;
    for (i, &p) in dist.iter().enumerate() {
        let x = signed_position(i, m) as f64;
        if libm::fabs(x) >= threshold {
            leaked += p;
        }
        mean += p * x;
        second += p * x * x;
    }
    if leaked > 1e-8 {
        return Err(Error::WrappedSupport { leaked });
    }
    Ok(second - mean * mean)
}

/// Label of a recorded time series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesLabel {
    LinearEntropyBits,
    VonNeumannBits,
    Variance,
    StdDev,
    WignerDistance,
}

impl SeriesLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesLabel::LinearEntropyBits => "linear_entropy_bits",
            SeriesLabel::VonNeumannBits => "von_neumann_bits",
            SeriesLabel::Variance => "variance",
            SeriesLabel::StdDev => "std_dev",
            SeriesLabel::WignerDistance => "wigner_distance",
        }
    }
}

/// A labelled observable time series with strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    label: SeriesLabel,
    times: Vec<u64>,
    values: Vec<f64>,
}

impl ObservableSeries {
    pub fn new(label: SeriesLabel) -> Self {
        ObservableSeries { label, times: Vec::new(), values: Vec::new() }
    }

    pub fn push(&mut self, time: u64, value: f64) {
        if let Some(&last) = self.times.last() {
            assert!(time > last, "series times must be strictly increasing");
        }
        self.times.push(time);
        self.values.push(value);
    }

    pub fn label(&self) -> SeriesLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// (time, value) pairs with `window.0 <= t <= window.1`.
    pub fn window(&self, window: (u64, u64)) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.times
            .iter()
            .zip(&self.values)
            .filter(move |(&t, _)| t >= window.0 && t <= window.1)
            .map(|(&t, &v)| (t, v))
    }
}

/// Least-squares slope of the series over the window; needs at least 10
/// samples.
pub fn sd_slope(series: &ObservableSeries, window: (u64, u64)) -> Result<f64> {
    let pts: Vec<(f64, f64)> =
        series.window(window).map(|(t, v)| (t as f64, v)).collect();
    if pts.len() < 10 {
        return Err(Error::TooFewSamples { needed: 10, got: pts.len() });
    }
    Ok(least_squares_slope(&pts))
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mean_t: f64 = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_v: f64 = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for &(t, v) in pts {
        num += (t - mean_t) * (v - mean_v);
        den += (t - mean_t) * (t - mean_t);
    }
    num / den
}

/// Fitted exponent of `v ~ t^alpha` over the window (log-log least squares).
/// Only samples with `t >= 1` and `v > 0` participate; needs at least 3.
pub fn power_law_exponent(series: &ObservableSeries, window: (u64, u64)) -> Result<f64> {
    let pts: Vec<(f64, f64)> = series
        .window(window)
        .filter(|&(t, v)| t >= 1 && v > 0.0)
        .map(|(t, v)| (libm::log(t as f64), libm::log(v)))
        .collect();
    if pts.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: pts.len() });
    }
    Ok(least_squares_slope(&pts))
}

/// Mean level and dominant oscillation period of a saturated series.
///
/// The level is the window mean. The period comes from the first local
/// maximum of the autocorrelation of the detrended samples, refined by
/// parabolic interpolation, and is reported in time units. When the window
/// is not uniformly sampled (a stride switch mid-window), the longest
/// uniformly spaced run of samples is used for the autocorrelation. `None`
/// when the window is flat or shows no correlation peak.
pub fn entropy_saturation(
    series: &ObservableSeries,
    window: (u64, u64),
) -> Result<(f64, Option<f64>)> {
    let pts: Vec<(u64, f64)> = series.window(window).collect();
    if pts.len() < 8 {
        return Err(Error::TooFewSamples { needed: 8, got: pts.len() });
    }
    let mean = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;

    let pts = longest_uniform_run(&pts);
    let n = pts.len();
    if n < 8 {
        return Ok((mean, None));
    }
    let stride = pts[1].0 - pts[0].0;

    let detrended: Vec<f64> = pts.iter().map(|p| p.1 - mean).collect();
    let var = detrended.iter().map(|x| x * x).sum::<f64>() / n as f64;
    if var < 1e-16 * (1.0 + mean * mean) {
        return Ok((mean, None));
    }

    let max_lag = n / 2;
    let autocorr: Vec<f64> = (0..=max_lag)
        .map(|lag| {
            let mut acc = 0.0f64;
            for i in 0..(n - lag) {
                acc += detrended[i] * detrended[i + lag];
            }
            acc / (n - lag) as f64
        })
        .collect();

    for lag in 2..max_lag {
        let (prev, here, next) = (autocorr[lag - 1], autocorr[lag], autocorr[lag + 1]);
        if here >= prev && here >= next && here > 0.2 * autocorr[0] {
            let denom = prev - 2.0 * here + next;
            let offset = if denom.abs() > 1e-300 { 0.5 * (prev - next) / denom } else { 0.0 };
            let period = (lag as f64 + offset) * stride as f64;
            return Ok((mean, Some(period)));
        }
    }
    Ok((mean, None))
}

fn longest_uniform_run(pts: &[(u64, f64)]) -> &[(u64, f64)] {
    let mut best = (0usize, 1usize);
    let mut start = 0usize;
    while start + 1 < pts.len() {
        let stride = pts[start + 1].0 - pts[start].0;
        let mut end = start + 1;
        while end + 1 < pts.len() && pts[end + 1].0 - pts[end].0 == stride {
            end += 1;
        }
        if end - start + 1 > best.1 - best.0 {
            best = (start, end + 1);
        }
        start = end;
    }
    &pts[best.0..best.1]
}
