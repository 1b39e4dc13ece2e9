//! Floquet-angled discrete Fourier transforms on coin registers.
//!
//! The transform family has matrix elements
//! `(1/sqrt(D)) exp(-i 2pi (j+eta)(k+kappa) / D)`. Expanding the product in
//! the exponent factors the operator into a diagonal input phase, the plain
//! transform, a diagonal output phase, and a global phase, so applying it
//! costs `O(D log D)` for power-of-two `D`. The dense matrix stays available
//! as the reference representation.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::linalg::DenseUnitary;

/// Phase offsets `(eta, kappa)` of the Fourier-transform family.
///
/// `(0, 0)` gives the plain transform (the two-dimensional case is the
/// Hadamard matrix); `(1/2, 1/2)` gives antiperiodic boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetAngles {
    pub eta: f64,
    pub kappa: f64,
}

impl FloquetAngles {
    pub const ZERO: FloquetAngles = FloquetAngles { eta: 0.0, kappa: 0.0 };
    pub const HALF: FloquetAngles = FloquetAngles { eta: 0.5, kappa: 0.5 };

    pub fn new(eta: f64, kappa: f64) -> Self {
        FloquetAngles { eta, kappa }
    }
}

/// Shape of an `N`-qubit register.
///
/// Qubit 1 is the most significant: basis index `j = sum_i x_i 2^(N-i)`, so
/// the first qubit selects the upper or lower half of the index range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterShape {
    num_qubits: usize,
}

impl RegisterShape {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits >= usize::BITS as usize - 1 {
            return Err(Error::InvalidDimension(num_qubits));
        }
        Ok(RegisterShape { num_qubits })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.num_qubits
    }
}

/// State vector of the coin register: `D` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinVector {
    amps: Vec<C64>,
}

impl CoinVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(CoinVector { amps })
    }

    /// Basis state `|idx>` of the given dimension.
    pub fn basis(dim: usize, idx: usize) -> Result<Self> {
        if dim == 0 || idx >= dim {
            return Err(Error::InvalidDimension(dim));
        }
        let mut amps = Vec::new();
        amps.resize(dim, C64::new(0.0, 0.0));
        amps[idx] = C64::new(1.0, 0.0);
        Ok(CoinVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Largest amplitude difference against another vector.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn unit_phase(angle: f64) -> C64 {
    C64::new(libm::cos(angle), libm::sin(angle))
}

/// One Floquet transform of a fixed length, with the diagonal phases and the
/// plain-transform twiddles precomputed.
pub(crate) struct FloquetPlan {
    fft: FftPlan,
    fwd_pre: Vec<C64>,
    fwd_post: Vec<C64>,
    inv_pre: Vec<C64>,
    inv_post: Vec<C64>,
}

impl FloquetPlan {
    pub(crate) fn new(len: usize, angles: FloquetAngles) -> Self {
        let lf = len as f64;
        let norm = 1.0 / libm::sqrt(lf);
        let global = unit_phase(-TAU * angles.eta * angles.kappa / lf);
        let fwd_pre: Vec<C64> =
            (0..len).map(|j| unit_phase(-TAU * (j as f64) * angles.kappa / lf)).collect();
        let out_phase: Vec<C64> =
            (0..len).map(|k| unit_phase(-TAU * angles.eta * (k as f64) / lf)).collect();
        let fwd_post: Vec<C64> = out_phase.iter().map(|p| p * global * norm).collect();
        let inv_pre: Vec<C64> = out_phase.iter().map(|p| p.conj()).collect();
        let inv_post: Vec<C64> =
            fwd_pre.iter().map(|p| p.conj() * global.conj() * norm).collect();
        FloquetPlan { fft: FftPlan::new(len), fwd_pre, fwd_post, inv_pre, inv_post }
    }

    pub(crate) fn len(&self) -> usize {
        self.fft.len()
    }

    pub(crate) fn forward(&self, buf: &mut [C64], scratch: &mut Vec<C64>) {
        for (v, p) in buf.iter_mut().zip(&self.fwd_pre) {
            *v *= p;
        }
        self.fft.forward(buf, scratch);
        for (v, p) in buf.iter_mut().zip(&self.fwd_post) {
            *v *= p;
        }
    }

    pub(crate) fn inverse(&self, buf: &mut [C64], scratch: &mut Vec<C64>) {
        for (v, p) in buf.iter_mut().zip(&self.inv_pre) {
            *v *= p;
        }
        self.fft.inverse(buf, scratch);
        for (v, p) in buf.iter_mut().zip(&self.inv_post) {
            *v *= p;
        }
    }

    pub(crate) fn apply(&self, buf: &mut [C64], scratch: &mut Vec<C64>, inverse: bool) {
        if inverse {
            self.inverse(buf, scratch);
        } else {
            self.forward(buf, scratch);
        }
    }
}

/// Dense matrix of the Floquet-angled Fourier transform.
///
/// Entry `(k, j)` is `(1/sqrt(D)) exp(-i 2pi (j+eta)(k+kappa) / D)`.
pub fn fourier_matrix(dim: usize, angles: FloquetAngles) -> Result<DenseUnitary> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let df = dim as f64;
    let norm = 1.0 / libm::sqrt(df);
    let mat = DenseUnitary::from_fn(dim, |k, j| {
        let angle = -TAU * (j as f64 + angles.eta) * (k as f64 + angles.kappa) / df;
        unit_phase(angle) * norm
    });
    debug_assert!(mat.unitarity_error() < 1e-10);
    Ok(mat)
}

/// Apply the Floquet Fourier transform (or its inverse) to a coin vector.
pub fn apply_fourier(v: &CoinVector, angles: FloquetAngles, inverse: bool) -> Result<CoinVector> {
    let mut out = v.clone();
    let plan = FloquetPlan::new(v.dim(), angles);
    let mut scratch = Vec::new();
    plan.apply(out.amps_mut(), &mut scratch, inverse);
    Ok(out)
}

/// Apply `I_{2^n} (x) F_{2^(N-n)}` : the transform acts on the last `N - n`
/// qubits for every fixed value of the first `n`.
///
/// `n = 0` is the full transform; `n = N` leaves only the scalar
/// `exp(-i 2pi eta kappa)` on each amplitude.
pub fn partial_fourier(
    v: &CoinVector,
    shape: RegisterShape,
    n: usize,
    angles: FloquetAngles,
    inverse: bool,
) -> Result<CoinVector> {
    if v.dim() != shape.dim() {
        return Err(Error::DimensionMismatch { expected: shape.dim(), got: v.dim() });
    }
    if n > shape.num_qubits() {
        return Err(Error::QubitIndexOutOfRange { n, num_qubits: shape.num_qubits() });
    }
    let block = 1usize << (shape.num_qubits() - n);
    let plan = FloquetPlan::new(block, angles);
    let mut out = v.clone();
    let mut scratch = Vec::new();
    for chunk in out.amps_mut().chunks_mut(block) {
        plan.apply(chunk, &mut scratch, inverse);
    }
    Ok(out)
}

/// Index permutation that cyclically left-shifts the labels of the first `n`
/// qubits: `|x1 x2 .. xn rest> -> |x2 .. xn x1 rest>`.
///
/// Returned as the destination map: amplitude at basis index `j` moves to
/// `perm[j]`.
pub(crate) fn shift_permutation(shape: RegisterShape, n: usize) -> Result<Vec<usize>> {
    if n < 1 || n > shape.num_qubits() {
        return Err(Error::QubitIndexOutOfRange { n, num_qubits: shape.num_qubits() });
    }
    let total = shape.num_qubits();
    let low_bits = total - n;
    let low_mask = (1usize << low_bits) - 1;
    let top_mask = (1usize << n) - 1;
    let perm = (0..shape.dim())
        .map(|j| {
            let top = j >> low_bits;
            let rotated = ((top << 1) | (top >> (n - 1))) & top_mask;
            (rotated << low_bits) | (j & low_mask)
        })
        .collect();
    Ok(perm)
}

/// Relabel the first `n` qubits by a cyclic left shift.
pub fn qubit_shift(v: &CoinVector, shape: RegisterShape, n: usize) -> Result<CoinVector> {
    if v.dim() != shape.dim() {
        return Err(Error::DimensionMismatch { expected: shape.dim(), got: v.dim() });
    }
    let perm = shift_permutation(shape, n)?;
    let mut out = Vec::new();
    out.resize(v.dim(), C64::new(0.0, 0.0));
    for (j, &dst) in perm.iter().enumerate() {
        out[dst] = v.amps()[j];
    }
    CoinVector::new(out)
}
