//! Statevector storage and the measurement / unitary operations.

use num_complex::Complex64;
use rand::Rng;

use super::pauli::{MeasurementOutcome, PauliAxis, PauliOp};
use super::QsimError;
use crate::bits::Bit;

const NORM_TOL: f64 = 1e-12;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Exact complex-amplitude register for 1–5 qubits.
///
/// Values are immutable: every operation takes the state by reference and
/// returns a fresh collapsed or transformed state, so simulations can fan
/// out branches freely.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Both collapse branches of a two-outcome measurement.
///
/// `prob_plus` is the probability of outcome bit 0 (eigenvalue +1). A branch
/// is `None` when its probability is zero and no post-measurement state
/// exists.
#[derive(Clone, Debug)]
pub struct MeasurementBranches {
    pub prob_plus: f64,
    pub plus: Option<StateVector>,
    pub minus: Option<StateVector>,
}

impl MeasurementBranches {
    /// Probability of outcome bit `b`.
    pub fn prob(&self, bit: Bit) -> f64 {
        if bit.is_one() {
            1.0 - self.prob_plus
        } else {
            self.prob_plus
        }
    }

    /// Post-measurement state for outcome bit `b`, if that branch exists.
    pub fn state(&self, bit: Bit) -> Option<&StateVector> {
        if bit.is_one() {
            self.minus.as_ref()
        } else {
            self.plus.as_ref()
        }
    }
}

impl StateVector {
    /// Build a state from raw amplitudes; checks the 2^n length and
    /// normalization invariants.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, QsimError> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(QsimError::UnsupportedQubitCount(0));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if !(1..=5).contains(&n_qubits) {
            return Err(QsimError::UnsupportedQubitCount(n_qubits));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QsimError::NotNormalized(norm));
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// The computational basis state `|0…0⟩` on `n_qubits`.
    pub fn zero_state(n_qubits: usize) -> Result<Self, QsimError> {
        if !(1..=5).contains(&n_qubits) {
            return Err(QsimError::UnsupportedQubitCount(n_qubits));
        }
        let mut amplitudes = vec![Complex64::ZERO; 1 << n_qubits];
        amplitudes[0] = Complex64::ONE;
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Sum of squared amplitude magnitudes (1 for any valid state).
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Debug dump: JSON array of `[re, im]` pairs in binary-index order,
    /// qubit 0 as the most significant bit.
    pub fn amplitude_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|a| [a.re, a.im]).collect();
        serde_json::to_string(&pairs).expect("amplitude serialization cannot fail")
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), QsimError> {
        if qubit >= self.n_qubits {
            return Err(QsimError::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Bit mask selecting `qubit` in an amplitude index (qubit 0 = MSB).
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Apply a Hadamard to one qubit.
    pub fn apply_hadamard(&self, qubit: usize) -> Result<StateVector, QsimError> {
        self.check_qubit(qubit)?;
        let mask = self.mask(qubit);
        let mut out = vec![Complex64::ZERO; self.amplitudes.len()];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            if idx & mask == 0 {
                let paired = idx | mask;
                let a = *amp;
                let b = self.amplitudes[paired];
                out[idx] = FRAC_1_SQRT_2 * (a + b);
                out[paired] = FRAC_1_SQRT_2 * (a - b);
            }
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// Apply a signed Pauli string, returning `op|ψ⟩`.
    fn apply_pauli(&self, op: &PauliOp) -> Result<StateVector, QsimError> {
        if op.len() != self.n_qubits {
            return Err(QsimError::PauliLengthMismatch {
                got: op.len(),
                expected: self.n_qubits,
            });
        }
        let mut out = vec![Complex64::ZERO; self.amplitudes.len()];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let mut target = idx;
            let mut phase = Complex64::new(op.sign.factor(), 0.0);
            for (qubit, axis) in op.axes.iter().enumerate() {
                let mask = self.mask(qubit);
                let bit_set = idx & mask != 0;
                match axis {
                    PauliAxis::I => {}
                    PauliAxis::X => target ^= mask,
                    PauliAxis::Y => {
                        // Y|b⟩ = i(−1)^b |b̄⟩
                        target ^= mask;
                        phase *= if bit_set {
                            -Complex64::i()
                        } else {
                            Complex64::i()
                        };
                    }
                    PauliAxis::Z => {
                        if bit_set {
                            phase = -phase;
                        }
                    }
                }
            }
            out[target] += phase * amp;
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// Expectation value `⟨ψ|op|ψ⟩` of a signed Pauli string.
    ///
    /// The result of a Hermitian expectation is real; any imaginary residue
    /// beyond 1e-12 indicates a broken operator and panics.
    pub fn expectation(&self, op: &PauliOp) -> Result<f64, QsimError> {
        let transformed = self.apply_pauli(op)?;
        let mut value = Complex64::ZERO;
        for (a, b) in self.amplitudes.iter().zip(transformed.amplitudes.iter()) {
            value += a.conj() * b;
        }
        assert!(
            value.im.abs() < 1e-12,
            "expectation of a Pauli string must be real, got {value}"
        );
        Ok(value.re)
    }

    /// Both branches of measuring the ±1 eigenspaces of a signed Pauli
    /// string. Rejects the all-identity operator.
    pub fn measure_joint_pauli_branches(
        &self,
        op: &PauliOp,
    ) -> Result<MeasurementBranches, QsimError> {
        if op.is_all_identity() {
            return Err(QsimError::AllIdentityOperator);
        }
        let transformed = self.apply_pauli(op)?;
        let mut plus = Vec::with_capacity(self.amplitudes.len());
        let mut minus = Vec::with_capacity(self.amplitudes.len());
        for (a, b) in self.amplitudes.iter().zip(transformed.amplitudes.iter()) {
            plus.push(0.5 * (a + b));
            minus.push(0.5 * (a - b));
        }
        let p_plus: f64 = plus.iter().map(|a| a.norm_sqr()).sum();
        let p_minus: f64 = minus.iter().map(|a| a.norm_sqr()).sum();
        Ok(MeasurementBranches {
            prob_plus: p_plus,
            plus: normalize_branch(plus, p_plus, self.n_qubits),
            minus: normalize_branch(minus, p_minus, self.n_qubits),
        })
    }

    /// Measure a signed Pauli string, sampling the outcome with Born
    /// probabilities and collapsing onto the corresponding eigenspace.
    pub fn measure_joint_pauli<R: Rng + ?Sized>(
        &self,
        op: &PauliOp,
        rng: &mut R,
    ) -> Result<(MeasurementOutcome, StateVector), QsimError> {
        let branches = self.measure_joint_pauli_branches(op)?;
        Ok(sample_branches(branches, rng))
    }

    /// Both branches of a single-qubit Pauli measurement. Identity is not a
    /// measurable basis.
    pub fn measure_pauli_branches(
        &self,
        qubit: usize,
        basis: PauliAxis,
    ) -> Result<MeasurementBranches, QsimError> {
        if basis == PauliAxis::I {
            return Err(QsimError::IdentityBasis);
        }
        self.check_qubit(qubit)?;
        self.measure_joint_pauli_branches(&PauliOp::single(self.n_qubits, qubit, basis))
    }

    /// Measure one qubit in a Pauli basis, sampling the outcome and
    /// collapsing the state.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &self,
        qubit: usize,
        basis: PauliAxis,
        rng: &mut R,
    ) -> Result<(MeasurementOutcome, StateVector), QsimError> {
        let branches = self.measure_pauli_branches(qubit, basis)?;
        Ok(sample_branches(branches, rng))
    }
}

fn normalize_branch(amplitudes: Vec<Complex64>, prob: f64, n_qubits: usize) -> Option<StateVector> {
    if prob < 1e-12 {
        return None;
    }
    let scale = 1.0 / prob.sqrt();
    Some(StateVector {
        n_qubits,
        amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
    })
}

fn sample_branches<R: Rng + ?Sized>(
    branches: MeasurementBranches,
    rng: &mut R,
) -> (MeasurementOutcome, StateVector) {
    let draw: f64 = rng.random();
    let bit = Bit(draw >= branches.prob_plus);
    let state = branches
        .state(bit)
        .cloned()
        .expect("sampled branch has positive probability");
    (MeasurementOutcome::new(bit), state)
}

/// The GHZ resource state `(1/√2)(|y₋y₋y₊⟩ + |y₊y₊y₋⟩)` with
/// `|y±⟩ = (1/√2)(|0⟩ ± i|1⟩)`.
///
/// Its stabilizer suite is `+ZZZ, +ZXX, +XZX, −XXZ`, which is what encodes
/// AND in measurement-outcome parities.
pub fn prepare_ghz() -> StateVector {
    ghz_state()
}

/// Same as [`prepare_ghz`]; named form used where a value (not an action)
/// reads better.
pub fn ghz_state() -> StateVector {
    let y_plus = [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    ];
    let y_minus = [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, -FRAC_1_SQRT_2),
    ];
    let mut amplitudes = vec![Complex64::ZERO; 8];
    for (idx, amp) in amplitudes.iter_mut().enumerate() {
        let b = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
        let term1 = y_minus[b[0]] * y_minus[b[1]] * y_plus[b[2]];
        let term2 = y_plus[b[0]] * y_plus[b[1]] * y_minus[b[2]];
        *amp = FRAC_1_SQRT_2 * (term1 + term2);
    }
    StateVector::from_amplitudes(amplitudes).expect("GHZ state is normalized")
}

/// The GHZ state with the Hadamard pad `𝟙⊗𝟙⊗H^{p_a⊕p_b}` applied, i.e. one
/// member of the padded ensemble with both pad bits fixed.
pub fn padded_ghz_state(p_a: Bit, p_b: Bit) -> StateVector {
    let state = ghz_state();
    if (p_a ^ p_b).is_one() {
        state.apply_hadamard(2).expect("qubit 2 exists")
    } else {
        state
    }
}

/// Sample one member of the padded five-qubit ensemble: draws independent
/// uniform pad bits `p_a`, `p_b` (the outcomes of the pad-qubit
/// computational-basis measurements) and returns the matching three-qubit
/// state `𝟙⊗𝟙⊗H^{p_a⊕p_b}|ψ⟩`.
pub fn prepare_padded_ensemble<R: Rng + ?Sized>(rng: &mut R) -> (Bit, Bit, StateVector) {
    let p_a = Bit(rng.random::<bool>());
    let p_b = Bit(rng.random::<bool>());
    (p_a, p_b, padded_ghz_state(p_a, p_b))
}
