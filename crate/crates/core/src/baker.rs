//! The family of coin-evolution unitaries and its classical counterpart.
//!
//! On an `N`-qubit register the family member with shift span `n` is
//! `G_{n-1}^{-1} S_n G_n`, where `G_n` is the partial Fourier transform
//! leaving the first `n` qubits alone and `S_n` cyclically shifts the first
//! `n` qubit labels. `n = 1` is the Balazs-Voros-Saraceno quantization of the
//! classical baker transformation; `n = N` evolves every qubit independently.
//! The same quantization exists for any even dimension as
//! `F_D^{-1} (I_2 (x) F_{D/2})`; for dimensions that are not a power of two
//! only the quadratic transform is provided, capped at `D = 512`.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fourier::{shift_permutation, FloquetAngles, FloquetPlan, RegisterShape};
use crate::linalg::DenseUnitary;

/// Cap on dense-only general-even dimensions.
pub const GENERAL_EVEN_DIM_CAP: usize = 512;

/// Which member of the evolution-operator family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BakerFamily {
    /// `N`-qubit member shifting the first `shifted_qubits` labels
    /// (`1 <= shifted_qubits <= qubits`).
    QubitRegister { qubits: usize, shifted_qubits: usize },
    /// Even-dimensional quantization `F_D^{-1} (I_2 (x) F_{D/2})`.
    GeneralEven { dim: usize },
}

/// Full parameter set selecting one evolution operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BakerSpec {
    pub family: BakerFamily,
    pub angles: FloquetAngles,
}

impl BakerSpec {
    pub fn qubit_register(qubits: usize, shifted_qubits: usize, angles: FloquetAngles) -> Self {
        BakerSpec { family: BakerFamily::QubitRegister { qubits, shifted_qubits }, angles }
    }

    pub fn general_even(dim: usize, angles: FloquetAngles) -> Self {
        BakerSpec { family: BakerFamily::GeneralEven { dim }, angles }
    }

    pub fn dim(&self) -> usize {
        match self.family {
            BakerFamily::QubitRegister { qubits, .. } => 1usize << qubits,
            BakerFamily::GeneralEven { dim } => dim,
        }
    }
}

enum ApplierKind {
    Qubit {
        // G_n acts in blocks of 2^(N-n); G_{n-1}^{-1} in blocks of 2^(N-n+1).
        fwd: FloquetPlan,
        inv: FloquetPlan,
        perm: Vec<usize>,
        inv_perm: Vec<usize>,
    },
    GeneralEven {
        half: FloquetPlan,
        full: FloquetPlan,
    },
}

/// A built, immutable evolution operator; applies in place.
pub struct BakerApplier {
    spec: BakerSpec,
    dim: usize,
    kind: ApplierKind,
}

/// Validate a spec and precompute its transform plans and permutations.
pub fn build_baker_applier(spec: &BakerSpec) -> Result<BakerApplier> {
    let kind = match spec.family {
        BakerFamily::QubitRegister { qubits, shifted_qubits } => {
            if qubits == 0 {
                return Err(Error::InvalidBakerSpec("qubit register must be non-empty"));
            }
            if qubits >= usize::BITS as usize - 1 {
                return Err(Error::InvalidBakerSpec("qubit register too large"));
            }
            if shifted_qubits < 1 || shifted_qubits > qubits {
                return Err(Error::InvalidBakerSpec(
                    "shifted qubit count must lie in [1, qubits]",
                ));
            }
            let shape = RegisterShape::new(qubits)?;
            let block_fwd = 1usize << (qubits - shifted_qubits);
            let perm = shift_permutation(shape, shifted_qubits)?;
            let inv_perm = inverse_permutation(&perm);
            ApplierKind::Qubit {
                fwd: FloquetPlan::new(block_fwd, spec.angles),
                inv: FloquetPlan::new(block_fwd * 2, spec.angles),
                perm,
                inv_perm,
            }
        }
        BakerFamily::GeneralEven { dim } => {
            if dim < 2 || dim % 2 != 0 {
                return Err(Error::InvalidBakerSpec("general-even dimension must be even and >= 2"));
            }
            if !dim.is_power_of_two() && dim > GENERAL_EVEN_DIM_CAP {
                return Err(Error::SizeGuardExceeded { limit: GENERAL_EVEN_DIM_CAP, requested: dim });
            }
            ApplierKind::GeneralEven {
                half: FloquetPlan::new(dim / 2, spec.angles),
                full: FloquetPlan::new(dim, spec.angles),
            }
        }
    };
    Ok(BakerApplier { spec: *spec, dim: spec.dim(), kind })
}

fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0usize; perm.len()];
    for (src, &dst) in perm.iter().enumerate() {
        inv[dst] = src;
    }
    inv
}

fn permute(v: &mut [C64], perm: &[usize], scratch: &mut Vec<C64>) {
    scratch.clear();
    scratch.resize(v.len(), C64::new(0.0, 0.0));
    for (src, &dst) in perm.iter().enumerate() {
        scratch[dst] = v[src];
    }
    v.copy_from_slice(scratch);
}

impl BakerApplier {
    pub fn spec(&self) -> &BakerSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Apply the operator in place. `scratch` is reused across calls.
    pub fn apply_with(&self, v: &mut [C64], scratch: &mut Vec<C64>) {
        debug_assert_eq!(v.len(), self.dim);
        match &self.kind {
            ApplierKind::Qubit { fwd, inv, perm, .. } => {
                for chunk in v.chunks_mut(fwd.len()) {
                    fwd.forward(chunk, scratch);
                }
                permute(v, perm, scratch);
                for chunk in v.chunks_mut(inv.len()) {
                    inv.inverse(chunk, scratch);
                }
            }
            ApplierKind::GeneralEven { half, full } => {
                for chunk in v.chunks_mut(half.len()) {
                    half.forward(chunk, scratch);
                }
                full.inverse(v, scratch);
            }
        }
    }

    /// Apply the inverse operator in place.
    pub fn apply_inverse_with(&self, v: &mut [C64], scratch: &mut Vec<C64>) {
        debug_assert_eq!(v.len(), self.dim);
        match &self.kind {
            ApplierKind::Qubit { fwd, inv, inv_perm, .. } => {
                for chunk in v.chunks_mut(inv.len()) {
                    inv.forward(chunk, scratch);
                }
                permute(v, inv_perm, scratch);
                for chunk in v.chunks_mut(fwd.len()) {
                    fwd.inverse(chunk, scratch);
                }
            }
            ApplierKind::GeneralEven { half, full } => {
                full.forward(v, scratch);
                for chunk in v.chunks_mut(half.len()) {
                    half.inverse(chunk, scratch);
                }
            }
        }
    }

    pub fn apply(&self, v: &mut [C64]) {
        let mut scratch = Vec::new();
        self.apply_with(v, &mut scratch);
    }

    pub fn apply_inverse(&self, v: &mut [C64]) {
        let mut scratch = Vec::new();
        self.apply_inverse_with(v, &mut scratch);
    }

    /// Dense matrix of the operator, column by column.
    pub fn dense_matrix(&self) -> DenseUnitary {
        let n = self.dim;
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut scratch = Vec::new();
        for j in 0..n {
            let mut e = Vec::new();
            e.resize(n, C64::new(0.0, 0.0));
            e[j] = C64::new(1.0, 0.0);
            self.apply_with(&mut e, &mut scratch);
            cols.push(e);
        }
        let mat = DenseUnitary::from_fn(n, |r, c| cols[c][r]);
        debug_assert!(mat.unitarity_error() < 1e-10);
        mat
    }
}

/// Point of the classical unit-square phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalPhasePoint {
    q: f64,
    p: f64,
}

impl ClassicalPhasePoint {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&q) || !(0.0..1.0).contains(&p) {
            return Err(Error::OutOfUnitSquare { q, p });
        }
        Ok(ClassicalPhasePoint { q, p })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// One step of the classical map: stretch in `q`, squeeze in `p`, stack the
/// right half onto the left.
pub fn classical_baker_step(pt: ClassicalPhasePoint) -> ClassicalPhasePoint {
    let cell = libm::floor(2.0 * pt.q);
    ClassicalPhasePoint { q: 2.0 * pt.q - cell, p: (pt.p + cell) / 2.0 }
}

/// Finite window of the bi-infinite symbolic string `... e(-2) e(-1) . e0 e1 ...`.
///
/// `past[0]` is the bit immediately left of the dot, `future[0]` immediately
/// right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicString {
    pub past: Vec<u8>,
    pub future: Vec<u8>,
}

impl SymbolicString {
    pub fn new(past: Vec<u8>, future: Vec<u8>) -> Result<Self> {
        if past.iter().chain(&future).any(|&b| b > 1) {
            return Err(Error::InvalidBakerSpec("symbolic bits must be 0 or 1"));
        }
        Ok(SymbolicString { past, future })
    }
}

/// Bernoulli shift: the dot moves one symbol to the right.
pub fn symbolic_step(s: &SymbolicString) -> Result<SymbolicString> {
    let (first, rest) = s.future.split_first().ok_or(Error::EmptyFuture)?;
    let mut past = Vec::with_capacity(s.past.len() + 1);
    past.push(*first);
    past.extend_from_slice(&s.past);
    Ok(SymbolicString { past, future: rest.to_vec() })
}
