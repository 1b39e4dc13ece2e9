//! Discrete Wigner function on a `2M x 2M` phase-space grid.
//!
//! The grid value at `(q, p)` is `Tr[rho A(q,p)] / M` with phase-space point
//! operators `A(q,p) = U^q R V^{-p} exp(i pi p q / M)`: `U` the cyclic
//! position shift, `R` the reflection, and `V` the diagonal momentum boost,
//! with signs fixed so that the grid total is state-independent (it equals 2
//! for any unit-trace density, pinned by a brute-force oracle in tests).
//! Sums along even-`q` columns reproduce position probabilities and sums
//! along even-`p` rows reproduce momentum probabilities, both scaled by the
//! same constant.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::linalg::DenseUnitary;
use crate::observables::{signed_position, DensityBasis, ReducedDensity};

/// Grid total shared by every unit-trace density.
pub const GRID_TOTAL: f64 = 2.0;

const HERMITICITY_TOL: f64 = 1e-10;

/// Real-valued `2M x 2M` phase-space grid, row-major with row index `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    ring_size: usize,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn from_values(ring_size: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != 4 * ring_size * ring_size {
            return Err(Error::DimensionMismatch {
                expected: 4 * ring_size * ring_size,
                got: values.len(),
            });
        }
        Ok(WignerGrid { ring_size, values })
    }

    pub fn ring_size(&self) -> usize {
        self.ring_size
    }

    /// Grid side length `2M`.
    pub fn side(&self) -> usize {
        2 * self.ring_size
    }

    pub fn at(&self, q: usize, p: usize) -> f64 {
        self.values[q * self.side() + p]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Position probabilities recovered from even-`q` column sums.
    pub fn position_marginal(&self) -> Vec<f64> {
        let side = self.side();
        (0..self.ring_size)
            .map(|x| {
                let row = &self.values[(2 * x) * side..(2 * x + 1) * side];
                row.iter().sum::<f64>() / GRID_TOTAL
            })
            .collect()
    }

    /// Momentum probabilities recovered from even-`p` row sums. The column
    /// `p = 2s` carries momentum index `(-s) mod M` in the walker's own
    /// momentum labelling.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        let side = self.side();
        (0..self.ring_size)
            .map(|k| {
                let s = (self.ring_size - k) % self.ring_size;
                let p = 2 * s;
                (0..side).map(|q| self.values[q * side + p]).sum::<f64>() / GRID_TOTAL
            })
            .collect()
    }
}

/// Phase-space point operator `A(q,p)`: Hermitian, unitary, with exactly one
/// unimodular entry per row.
pub fn phase_point_operator(q: usize, p: usize, ring_size: usize) -> Result<DenseUnitary> {
    let m = ring_size;
    if q >= 2 * m || p >= 2 * m {
        return Err(Error::IndexOutOfRange { index: q.max(p), limit: 2 * m });
    }
    let lead = PI * (p as f64) * (q as f64) / (m as f64);
    let lead_phase = C64::new(libm::cos(lead), libm::sin(lead));
    let mat = DenseUnitary::from_fn(m, |row, col| {
        if row == (q + m - (col % m)) % m {
            let angle = -TAU * (col as f64) * (p as f64) / (m as f64);
            lead_phase * C64::new(libm::cos(angle), libm::sin(angle))
        } else {
            C64::new(0.0, 0.0)
        }
    });
    debug_assert!(mat.unitarity_error() < 1e-10);
    debug_assert!(mat.hermiticity_error() < 1e-10);
    Ok(mat)
}

/// Wigner function of a reduced density matrix.
///
/// Momentum-basis input is converted to the position basis first. Fails on
/// non-Hermitian input. Each fixed `q` needs one length-`M` transform of the
/// anti-diagonal slice of `rho`, so the full grid costs `O(M^2 log M)`.
pub fn wigner_from_density(rho: &ReducedDensity) -> Result<WignerGrid> {
    let herm = rho.hermiticity_error();
    if herm > HERMITICITY_TOL {
        return Err(Error::NonHermitian { deviation: herm });
    }
    let rho_pos;
    let rho = if rho.basis() == DensityBasis::Position {
        rho
    } else {
        rho_pos = rho.to_position()?;
        &rho_pos
    };
    let m = rho.ring_size();
    let side = 2 * m;
    let plan = FftPlan::new(m);
    let inv_m = 1.0 / m as f64;
    let mut values = vec![0.0f64; side * side];
    let mut slice = vec![C64::new(0.0, 0.0); m];
    let mut scratch = Vec::new();
    for q in 0..side {
        for (mm, slot) in slice.iter_mut().enumerate() {
            let nn = (q + m - (mm % m)) % m;
            *slot = rho.at(mm, nn);
        }
        plan.forward(&mut slice, &mut scratch);
        for p in 0..side {
            let angle = PI * (p as f64) * (q as f64) / (m as f64);
            let lead = C64::new(libm::cos(angle), libm::sin(angle));
            values[q * side + p] = (lead * slice[p % m]).re * inv_m;
        }
    }
    Ok(WignerGrid { ring_size: m, values })
}

/// Classical random-walk distribution on the ring at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalWalkDistribution {
    probs: Vec<f64>,
    time: u64,
}

impl ClassicalWalkDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn ring_size(&self) -> usize {
        self.probs.len()
    }
}

/// Binomial walk distribution `2^-t C(t, (t+x)/2)` on sites `x = -t ..= t`
/// with the parity of `t`, wrapped onto the ring by summing aliases.
pub fn classical_walk_distribution(ring_size: usize, time: u64) -> Result<ClassicalWalkDistribution> {
    if ring_size < 2 {
        return Err(Error::InvalidDimension(ring_size));
    }
    let mut probs = vec![0.0f64; ring_size];
    let t = time as i64;
    let mut coeff = libm::exp2(-(time as f64));
    for i in 0..=t {
        let x = 2 * i - t;
        let idx = x.rem_euclid(ring_size as i64) as usize;
        probs[idx] += coeff;
        if i < t {
            coeff *= (t - i) as f64 / (i + 1) as f64;
        }
    }
    Ok(ClassicalWalkDistribution { probs, time })
}

/// Classical phase-space counterpart of a walk distribution: the position
/// marginal on even columns, uniform over momentum, zero on odd columns,
/// scaled to the quantum grid total.
pub fn classical_phase_grid(dist: &ClassicalWalkDistribution) -> WignerGrid {
    let m = dist.ring_size();
    let side = 2 * m;
    let mut values = vec![0.0f64; side * side];
    for x in 0..m {
        let cell = dist.probs[x] / m as f64;
        let row = &mut values[(2 * x) * side..(2 * x + 1) * side];
        for v in row.iter_mut() {
            *v = cell;
        }
    }
    WignerGrid { ring_size: m, values }
}

/// Squared phase-space distance: the sum of squared cell differences.
pub fn distance(g1: &WignerGrid, g2: &WignerGrid) -> Result<f64> {
    if g1.ring_size != g2.ring_size {
        return Err(Error::GridSizeMismatch { left: g1.ring_size, right: g2.ring_size });
    }
    Ok(g1
        .values
        .iter()
        .zip(&g2.values)
        .map(|(a, b)| (a - b) * (a - b))
        .sum())
}

/// Variance of a classical walk distribution (signed positions).
pub fn classical_variance(dist: &ClassicalWalkDistribution) -> Result<f64> {
    crate::observables::position_variance(&dist.probs)
}

#[allow(unused_imports)]
use signed_position as _signed_position_used_by_docs;
