//! Dense complex matrices and a Hermitian eigensolver.
//!
//! The dense types exist as reference representations: structured operators
//! are checked against them in tests, and the Wigner machinery uses them for
//! the phase-space point operators. Sizes stay small (a few hundred), so the
//! cyclic Jacobi sweep below is entirely adequate.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense square complex matrix in row-major order.
///
/// Constructors that build operators expected to be unitary verify
/// `U^dagger U = I` in debug builds.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<C64>,
}

impl DenseUnitary {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            for col in 0..dim {
                entries.push(f(row, col));
            }
        }
        DenseUnitary { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.at(c, r).conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: rhs.dim });
        }
        let n = self.dim;
        Ok(Self::from_fn(n, |r, c| {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += self.at(r, k) * rhs.at(k, c);
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.entries[r * n..(r + 1) * n];
            let mut acc = C64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            *slot = acc;
        }
        Ok(out)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Largest elementwise deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.dagger().matmul(self).expect("same dim");
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let expect = if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                let dev = (prod.at(r, c) - expect).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Largest elementwise deviation from `A = A^dagger`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let dev = (self.at(r, c) - self.at(c, r).conj()).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    pub fn max_entry_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Row-major product of two `n x n` matrices given as flat slices.
pub(crate) fn matmul_flat(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n * n);
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for r in 0..n {
        for k in 0..n {
            let av = a[r * n + k];
            if av.norm_sqr() == 0.0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            let orow = &mut out[r * n..(r + 1) * n];
            for (o, &bv) in orow.iter_mut().zip(brow) {
                *o += av * bv;
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
///
/// The input is read as a flat row-major `n x n` slice; only its Hermitian
/// part is meaningful. Fails if the off-diagonal mass has not vanished after
/// a fixed number of sweeps.
pub fn hermitian_eigenvalues(mat: &[C64], n: usize) -> Result<Vec<f64>> {
    if n == 0 || mat.len() != n * n {
        return Err(Error::InvalidDimension(n));
    }
    let mut a = mat.to_vec();
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().max(1e-300);
    let tol = 1e-30 * scale;

    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off <= tol {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(eigs);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r * r <= tol / (n * n) as f64 {
                    continue;
                }
                let phase = apq / r; // e^{i arg(apq)}
                let alpha = a[p * n + p].re;
                let gamma = a[q * n + q].re;
                let zeta = (gamma - alpha) / (2.0 * r);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    let s = if zeta > 0.0 { 1.0 } else { -1.0 };
                    s / (libm::fabs(zeta) + libm::sqrt(zeta * zeta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                // J = I except J[p][p]=c, J[p][q]=s*phase, J[q][p]=-s*conj(phase), J[q][q]=c;
                // update A <- J^dagger A J, which zeroes A[p][q].
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * phase.conj() * akq;
                    let new_kq = s * phase * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[k * n + q] = new_kq;
                    a[p * n + k] = new_kp.conj();
                    a[q * n + k] = new_kq.conj();
                }
                let new_pp = c * c * alpha - 2.0 * c * s * r + s * s * gamma;
                let new_qq = s * s * alpha + 2.0 * c * s * r + c * c * gamma;
                a[p * n + p] = C64::new(new_pp, 0.0);
                a[q * n + q] = C64::new(new_qq, 0.0);
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
            }
        }
    }
    Err(Error::NoConvergence("jacobi eigenvalue sweep"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_unitary() {
        assert!(DenseUnitary::identity(5).unitarity_error() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let n = 4;
        let diag = [3.0, -1.0, 0.5, 2.0];
        let mat = DenseUnitary::from_fn(n, |r, c| {
            if r == c {
                C64::new(diag[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let eigs = hermitian_eigenvalues(mat.entries(), n).unwrap();
        assert_eq!(eigs.len(), 4);
        for (got, want) in eigs.iter().zip([-1.0, 0.5, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_known_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let mat = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, -1.0),
            C64::new(1.0, 0.0),
        ];
        let eigs = hermitian_eigenvalues(&mat, 2).unwrap();
        assert!((eigs[0] - 0.0).abs() < 1e-12);
        assert!((eigs[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_sum_and_square_sum_match_traces() {
        // Pseudo-random Hermitian matrix; spectrum checked via trace identities.
        let n = 6;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let mut mat = vec![C64::new(0.0, 0.0); n * n];
        for r in 0..n {
            mat[r * n + r] = C64::new(next(), 0.0);
            for c in (r + 1)..n {
                let z = C64::new(next(), next());
                mat[r * n + c] = z;
                mat[c * n + r] = z.conj();
            }
        }
        let eigs = hermitian_eigenvalues(&mat, n).unwrap();
        let trace: f64 = (0..n).map(|i| mat[i * n + i].re).sum();
        let frob: f64 = mat.iter().map(|z| z.norm_sqr()).sum();
        let sum: f64 = eigs.iter().sum();
        let sq_sum: f64 = eigs.iter().map(|x| x * x).sum();
        assert!((sum - trace).abs() < 1e-10);
        assert!((sq_sum - frob).abs() < 1e-10);
    }
}
