//! Unnormalized discrete Fourier kernels used by the structured unitaries.
//!
//! Power-of-two lengths use an in-place radix-2 transform; every other length
//! falls back to the quadratic sum. Both paths share precomputed twiddle
//! tables so repeated application is cheap and the floating-point operation
//! order is fixed.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64 as C64;

/// Precomputed transform of one fixed length.
///
/// `forward` evaluates `out[k] = sum_j buf[j] exp(-i 2pi jk / len)`; `inverse`
/// uses the conjugate kernel. Neither applies a normalization factor.
pub(crate) struct FftPlan {
    len: usize,
    fwd: Vec<C64>,
    inv: Vec<C64>,
}

impl FftPlan {
    pub(crate) fn new(len: usize) -> Self {
        assert!(len >= 1, "transform length must be positive");
        let fwd: Vec<C64> = (0..len)
            .map(|m| {
                let angle = -TAU * (m as f64) / (len as f64);
                C64::new(libm::cos(angle), libm::sin(angle))
            })
            .collect();
        let inv: Vec<C64> = fwd.iter().map(|w| w.conj()).collect();
        FftPlan { len, fwd, inv }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn forward(&self, buf: &mut [C64], scratch: &mut Vec<C64>) {
        self.transform(buf, false, scratch);
    }

    pub(crate) fn inverse(&self, buf: &mut [C64], scratch: &mut Vec<C64>) {
        self.transform(buf, true, scratch);
    }

    fn transform(&self, buf: &mut [C64], inverse: bool, scratch: &mut Vec<C64>) {
        debug_assert_eq!(buf.len(), self.len);
        let table = if inverse { &self.inv } else { &self.fwd };
        if self.len.is_power_of_two() {
            radix2(buf, table);
        } else {
            naive(buf, table, scratch);
        }
    }
}

fn radix2(buf: &mut [C64], table: &[C64]) {
    let n = buf.len();
    if n == 1 {
        return;
    }
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            buf.swap(i, j);
        }
        let mut mask = n >> 1;
        while j & mask != 0 {
            j ^= mask;
            mask >>= 1;
        }
        j |= mask;
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = n / len;
        for start in (0..n).step_by(len) {
            for m in 0..half {
                let w = table[m * step];
                let a = buf[start + m];
                let b = buf[start + m + half] * w;
                buf[start + m] = a + b;
                buf[start + m + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn naive(buf: &mut [C64], table: &[C64], scratch: &mut Vec<C64>) {
    let n = buf.len();
    scratch.clear();
    scratch.resize(n, C64::new(0.0, 0.0));
    for (k, out) in scratch.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &v) in buf.iter().enumerate() {
            acc += v * table[(j * k) % n];
        }
        *out = acc;
    }
    buf.copy_from_slice(scratch);
}
