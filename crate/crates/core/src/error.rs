use core::fmt;

/// Errors reported by the simulation kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A dimension argument was zero or otherwise unusable.
    InvalidDimension(usize),
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, got: usize },
    /// A qubit count argument fell outside the register.
    QubitIndexOutOfRange { n: usize, num_qubits: usize },
    /// A grid or momentum index fell outside its valid range.
    IndexOutOfRange { index: usize, limit: usize },
    /// The requested evolution-operator parameters are inconsistent.
    InvalidBakerSpec(&'static str),
    /// A dense-construction size guard was exceeded.
    SizeGuardExceeded { limit: usize, requested: usize },
    /// A state vector that must be normalized is not.
    NotNormalized { norm: f64 },
    /// A classical phase-space point left the unit square.
    OutOfUnitSquare { q: f64, p: f64 },
    /// The future side of a symbolic string is empty; the shift is undefined.
    EmptyFuture,
    /// The position distribution carries weight near the antipode of the
    /// origin, so signed moments are no longer meaningful.
    WrappedSupport { leaked: f64 },
    /// An estimator was given fewer samples than it needs.
    TooFewSamples { needed: usize, got: usize },
    /// An inverse evolution was asked to rewind past the initial time.
    TimeUnderflow { have: u64, requested: u64 },
    /// A matrix that must be Hermitian is not.
    NonHermitian { deviation: f64 },
    /// Two phase-space grids of different ring sizes were combined.
    GridSizeMismatch { left: usize, right: usize },
    /// An iterative numerical routine failed to converge.
    NoConvergence(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(d) => write!(f, "invalid dimension {d}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::QubitIndexOutOfRange { n, num_qubits } => {
                write!(f, "qubit count {n} out of range for a {num_qubits}-qubit register")
            }
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range (limit {limit})")
            }
            Error::InvalidBakerSpec(why) => write!(f, "invalid evolution-operator spec: {why}"),
            Error::SizeGuardExceeded { limit, requested } => {
                write!(f, "size guard exceeded: requested {requested}, limit {limit}")
            }
            Error::NotNormalized { norm } => {
                write!(f, "state vector is not normalized (norm {norm:e})")
            }
            Error::OutOfUnitSquare { q, p } => {
                write!(f, "phase-space point ({q}, {p}) outside the unit square")
            }
            Error::EmptyFuture => write!(f, "symbolic string has an empty future side"),
            Error::WrappedSupport { leaked } => write!(
                f,
                "position distribution wrapped around the ring (weight {leaked:e} near the antipode); \
                 increase the ring size to at least 2*t + 2"
            ),
            Error::TooFewSamples { needed, got } => {
                write!(f, "estimator needs at least {needed} samples, got {got}")
            }
            Error::TimeUnderflow { have, requested } => {
                write!(f, "cannot rewind {requested} steps from time {have}")
            }
            Error::NonHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::GridSizeMismatch { left, right } => {
                write!(f, "phase-space grids have different ring sizes ({left} vs {right})")
            }
            Error::NoConvergence(which) => write!(f, "numerical routine did not converge: {which}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
