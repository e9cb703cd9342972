use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with dim >= 1 (got {rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not Hermitian: Pauli coefficient of {pauli} has imaginary part {imag:e}")]
    NonHermitian { pauli: String, imag: f64 },

    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),

    #[error("Pauli expansion mixes qubit counts: expected {expected}, found {found} in {pauli}")]
    QubitCountMismatch {
        expected: usize,
        found: usize,
        pauli: String,
    },

    #[error("non-finite Pauli coefficient for {0}")]
    NonFiniteCoefficient(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("unphysical Bloch vector: length {0} exceeds 1")]
    UnphysicalBloch(f64),

    #[error("density matrix must have unit trace, found {0}")]
    NonUnitTrace(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid measurement basis: {0}")]
    InvalidBasis(String),

    #[error("invalid ket: {0}")]
    InvalidKet(String),

    #[error("projectors are orthogonal (overlap {0:e}); simultaneous assignment undefined")]
    OrthogonalProjectors(f64),

    #[error("not a rank-1 projector: {0}")]
    NotRankOneProjector(String),

    #[error("outcome index {0} out of range 1..=4")]
    IndexOutOfRange(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
