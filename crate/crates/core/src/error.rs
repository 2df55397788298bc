//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by simulator and estimator operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A dense simulation would exceed the qubit cap.
    #[error("{requested} qubits exceed the dense-simulation cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    /// Matrix or register dimensions do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A qubit index is out of range for the register.
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    /// A matrix expected to be unitary is not, within tolerance.
    #[error("matrix is not unitary (max |U^dag U - I| = {residual:.3e})")]
    NotUnitary { residual: f64 },

    /// A density matrix failed validation.
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// A channel failed validation (normalization, arity, CPTP).
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// A scalar parameter is outside its admissible range.
    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// An estimator denominator is too close to zero to divide by.
    #[error("degenerate denominator in {context} (|{value:.3e}| < {threshold:.0e})")]
    DegenerateDenominator {
        context: &'static str,
        value: f64,
        threshold: f64,
    },

    /// Zero-noise extrapolation hit a non-positive intermediate value.
    #[error("extrapolation domain error: non-positive intermediate value {0:.3e}")]
    ExtrapolationDomain(f64),

    /// A circuit does not have the layer structure an operation requires.
    #[error("circuit shape error: {0}")]
    CircuitShape(String),

    /// A Pauli was conjugated through a gate that is not Clifford.
    #[error("non-Clifford gate {0} encountered during Pauli conjugation")]
    NonClifford(String),

    /// Experiment configuration failed validation.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Wrapped I/O error, annotated with the path involved.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Failure parsing a config or data file.
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
