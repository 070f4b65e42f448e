//! Exact statevector engine for one to five qubits.
//!
//! The engine stores full complex amplitude vectors and supports exactly the
//! operations the protocols need: GHZ preparation, Hadamard application,
//! single-qubit Pauli measurement with collapse, joint Pauli-string
//! measurement, expectation values, and the Hadamard-padded ensemble. Every
//! measurement also has a deterministic two-branch variant that returns both
//! collapse branches with their exact probabilities, which is what the
//! privacy audits enumerate over.
//!
//! Conventions, fixed project-wide:
//! * Qubits are indexed from 0; qubit 0 is the most significant bit of the
//!   amplitude index, so for three qubits the amplitude at index `0b101`
//!   belongs to `|101⟩`.
//! * A measurement outcome bit `b` encodes the eigenvalue `(−1)^b`.
//! * Measurement settings map an input bit to a basis as `0 ↦ Z`, `1 ↦ X`.

mod pauli;
mod state;

pub use pauli::{MeasurementOutcome, MeasurementSetting, PauliAxis, PauliOp, Sign};
pub use state::{
    ghz_state, padded_ghz_state, prepare_ghz, prepare_padded_ensemble, MeasurementBranches,
    StateVector,
};

use thiserror::Error;

/// Errors from statevector operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsimError {
    #[error("qubit index {qubit} out of range for {n_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit count {0} outside supported range 1..=5")]
    UnsupportedQubitCount(usize),
    #[error("identity is not a measurable basis")]
    IdentityBasis,
    #[error("all-identity Pauli string is not measurable")]
    AllIdentityOperator,
    #[error("Pauli string has {got} entries but the state has {expected} qubits")]
    PauliLengthMismatch { got: usize, expected: usize },
    #[error("unparseable Pauli string {0:?}")]
    BadPauliString(String),
    #[error("state is not normalized (sum of squared amplitudes = {0})")]
    NotNormalized(f64),
}
