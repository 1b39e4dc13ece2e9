//! Deterministic simulator of a discrete-time quantum walker on a ring whose
//! coin is a multi-qubit register evolved by a family of quantized baker
//! maps.
//!
//! The one-step evolution is block diagonal in the walker's momentum, so a
//! state is stored as `M` independent coin vectors and stepped sector by
//! sector. The crate provides the structured Fourier transforms and coin
//! operators, the sector evolution with a dense full-space oracle, reduced
//! densities with entropy and spread observables, and the discrete Wigner
//! function with its classical reference grid.
//!
//! Everything here is pure computation over `alloc` collections; IO, the
//! batch driver, and parallel scheduling live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod baker;
pub mod error;
mod fft;
pub mod fourier;
pub mod linalg;
pub mod observables;
pub mod walk;
pub mod wigner;

pub use num_complex::Complex64 as C64;

pub use baker::{
    build_baker_applier, classical_baker_step, symbolic_step, BakerApplier, BakerFamily,
    BakerSpec, ClassicalPhasePoint, SymbolicString,
};
pub use error::{Error, Result};
pub use fourier::{
    apply_fourier, fourier_matrix, partial_fourier, qubit_shift, CoinVector, FloquetAngles,
    RegisterShape,
};
pub use linalg::{hermitian_eigenvalues, DenseUnitary};
pub use observables::{
    entropy_saturation, linear_entropy, linear_entropy_of_state, position_distribution,
    position_variance, power_law_exponent, reduced_density, sd_slope, von_neumann_entropy,
    von_neumann_entropy_of_state, DensityBasis, ObservableSeries, ReducedDensity, SeriesLabel,
};
pub use walk::{
    dense_oracle_evolve, evolve, evolve_inverse, evolve_sector, init_state, sector_step,
    InitialCoinSpec, QubitState, SystemState,
};
pub use wigner::{
    classical_phase_grid, classical_walk_distribution, distance, phase_point_operator,
    wigner_from_density, ClassicalWalkDistribution, WignerGrid,
};
