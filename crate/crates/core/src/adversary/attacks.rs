//! The pad-detection measurement and the EPR polling attack.

use std::collections::BTreeSet;

use rand::Rng;

use super::AdversaryError;
use crate::bits::{parity, Bit};
use crate::boolfn::Decomposition;
use crate::protocol::{run_scheme_b_one_sided, ProtocolError};
use crate::qsim::{padded_ghz_state, MeasurementSetting, PauliAxis, PauliOp, StateVector};

/// Infer the pad parity `p_a⊕p_b` from a padded GHZ state by measuring Y on
/// the padded qubit jointly with Y on one other qubit.
///
/// The unpadded state satisfies `−𝟙YY` (and `−Y𝟙Y`); a Hadamard pad flips
/// the sign, so the joint eigenvalue reads the pad parity directly, and
/// because the state is an eigenstate either way, the measurement leaves it
/// untouched. The attack requires the attacker to actually hold the padded
/// qubit and at least one other, i.e. quantum exchange between the
/// corrupted parties.
pub fn pad_detection_attack<R: Rng>(
    padded_state: &StateVector,
    attacker_qubits: &BTreeSet<usize>,
    rng: &mut R,
) -> Result<(Bit, StateVector), AdversaryError> {
    const PADDED_QUBIT: usize = 2;
    if attacker_qubits.len() < 2 || !attacker_qubits.contains(&PADDED_QUBIT) {
        return Err(AdversaryError::AttackUnavailable {
            held: attacker_qubits.len(),
        });
    }
    let partner = *attacker_qubits
        .iter()
        .find(|q| **q != PADDED_QUBIT)
        .expect("two attacker qubits");
    let mut axes = vec![PauliAxis::I; padded_state.n_qubits()];
    axes[PADDED_QUBIT] = PauliAxis::Y;
    axes[partner] = PauliAxis::Y;
    let op = PauliOp::plus(axes);
    let (outcome, post) = padded_state.measure_joint_pauli(&op, rng)?;
    // Eigenvalue −1 (bit 1) is the unpadded signature.
    Ok((Bit::ONE ^ outcome.bit, post))
}

/// Best effort with a single qubit: measure it in Y and guess. The marginal
/// is maximally mixed, so this succeeds only at chance level.
pub fn pad_detection_single_qubit_guess<R: Rng>(
    padded_state: &StateVector,
    qubit: usize,
    rng: &mut R,
) -> Result<Bit, AdversaryError> {
    let (outcome, _) = padded_state.measure_pauli(qubit, PauliAxis::Y, rng)?;
    Ok(Bit::ONE ^ outcome.bit)
}

/// Result of the EPR polling attack on the one-sided scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackResult {
    pub success: bool,
    /// `(candidate second-party input, function value recovered for it)`.
    pub polled_outputs: Vec<(Vec<Bit>, Bit)>,
}

/// The EPR attack against the one-sided scheme with Bob and Charlie
/// corrupted.
///
/// With a quantum channel, Bob hands Charlie his qubit; per term Charlie
/// measures the two commuting joint observables covering both of Bob's
/// candidate settings (`X⊗X, Z⊗Z` or `X⊗Z, Z⊗X`, depending on the masked
/// parity he received), then combines them with Alice's summation bit to
/// recover the function value for every candidate input of Bob's. Without
/// the channel each party holds one qubit, a single basis must be chosen,
/// and only the one honestly computed value exists.
pub fn epr_attack<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y_actual: &[Bit],
    quantum_channel_allowed: bool,
    rng: &mut R,
) -> Result<AttackResult, AdversaryError> {
    if !quantum_channel_allowed {
        // The corrupted parties must commit to a single classical bit and a
        // single measurement basis; polling is impossible. Run honestly.
        let result = run_scheme_b_one_sided(decomp, x, y_actual, rng)?;
        let value = result
            .outcome
            .value()
            .expect("one-sided scheme always completes");
        return Ok(AttackResult {
            success: false,
            polled_outputs: vec![(y_actual.to_vec(), value)],
        });
    }

    if x.len() != decomp.alice_variables().len() {
        return Err(AdversaryError::Protocol(ProtocolError::ArityMismatch {
            party: decomp.alice_name().to_string(),
            got: x.len(),
            expected: decomp.alice_variables().len(),
        }));
    }

    let p_bits = decomp.eval_p(x);
    let mut alice_sum = Bit::ZERO;
    // Per term, the joint outcome standing in for M2⊕M3 under each of
    // Bob's candidate settings.
    let mut joint: Vec<[Bit; 2]> = Vec::with_capacity(p_bits.len());

    for p in &p_bits {
        // Honest preparation and Alice's half of the protocol.
        let p_a = Bit(rng.random::<bool>());
        let p_b = Bit(rng.random::<bool>());
        let state = padded_ghz_state(p_a, p_b);
        let (m1_outcome, state) = {
            let branches = state.measure_pauli_branches(0, MeasurementSetting(*p).basis())?;
            let draw: f64 = rng.random();
            let bit = Bit(draw >= branches.prob_plus);
            (bit, branches.state(bit).expect("branch exists").clone())
        };
        alice_sum ^= m1_outcome;
        let sent_a = *p ^ p_a;

        // Charlie holds qubits 1 and 2 (Bob handed his over) and knows p_b.
        // For Bob's candidate setting q, the third-party basis would be
        // q ⊕ sent_a ⊕ p_b; the two joint observables commute.
        let masked = sent_a ^ p_b;
        let mut outcomes = [Bit::ZERO; 2];
        let mut current = state;
        for (slot, candidate) in outcomes.iter_mut().zip([Bit::ZERO, Bit::ONE]) {
            let mut axes = vec![PauliAxis::I; 3];
            axes[1] = MeasurementSetting(candidate).basis();
            axes[2] = MeasurementSetting(candidate ^ masked).basis();
            let (outcome, next) = current.measure_joint_pauli(&PauliOp::plus(axes), rng)?;
            *slot = outcome.bit;
            current = next;
        }
        joint.push(outcomes);
    }

    // Poll the function for every candidate input of Bob's.
    let n_y = decomp.bob_variables().len();
    let mut polled = Vec::with_capacity(1 << n_y);
    for raw in 0..(1usize << n_y) {
        let y_cand: Vec<Bit> = (0..n_y)
            .map(|k| Bit(raw & (1 << (n_y - 1 - k)) != 0))
            .collect();
        let q_bits = decomp.eval_q(&y_cand);
        let value = alice_sum
            ^ parity(
                q_bits
                    .iter()
                    .zip(&joint)
                    .map(|(q, pair)| pair[q.as_u8() as usize]),
            );
        polled.push((y_cand, value));
    }

    Ok(AttackResult {
        success: true,
        polled_outputs: polled,
    })
}
