//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the linear algebra, state construction, channel and
/// QFI layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {context} (got {got}, expected {expected})")]
    DimensionMismatch {
        context: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("qubit index {index} out of range for {qubit_count} qubits")]
    QubitOutOfRange { index: usize, qubit_count: usize },

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (dim {dim}, off-diagonal norm {off_norm:.3e}); matrix:\n{matrix}")]
    EigenNonConvergence {
        sweeps: usize,
        dim: usize,
        off_norm: f64,
        matrix: String,
    },

    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("{name} = {value} outside admissible range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("parameter domain error in {term}: division by zero ({detail})")]
    ParamDomain { term: &'static str, detail: String },

    #[error("unphysical channel coefficient {name} = {value:.12e}, outside [0, 1]")]
    Unphysical { name: &'static str, value: f64 },

    #[error("channel-acted matrix is not Hermitian for squeezing angle {big_phi} (|Im| = {imag_norm:.3e}); use the literal-complex constructor for symbolic comparison")]
    NonHermitianLiteral { big_phi: f64, imag_norm: f64 },

    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("degenerate eigenvalue branches in retained support (gap {gap:.3e} <= {threshold:.3e}); use the SLD route")]
    DegenerateBranches { gap: f64, threshold: f64 },

    #[error("eigenvector gauge alignment failed: {0}")]
    GaugeAlignment(String),

    #[error("QFI value {0:.3e} below negativity tolerance; derivative step or gauge failure")]
    NegativeQfi(f64),

    #[error("closed-form value has non-negligible imaginary part {imag:.3e} at squeezing angle {big_phi}; request the real part explicitly")]
    ComplexClosedForm { big_phi: f64, imag: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
