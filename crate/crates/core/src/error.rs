use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("register of {width} qubits exceeds the {max}-qubit limit of this path")]
    TooWide { width: usize, max: usize },

    #[error("Fock index {index} outside [{min}, {capacity}]")]
    FockOutOfRange { index: usize, min: usize, capacity: usize },

    #[error("matrix dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("malformed bitstring label {0:?}")]
    BadLabel(String),

    #[error("operator is not Hermitian")]
    NotHermitian,

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A numerical or structural invariant failed during execution.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}
