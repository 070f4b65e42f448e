//! The three-party executions of a two-party computation: schemes A, B
//! (both physical realisations), the one-sided B variant, and the
//! repetition-based scheme C with security testers.

use rand::Rng;

use super::choice::{ChoiceDriver, SampledDriver};
use super::session::Session;
use super::types::{HaltReason, PartyId, SessionOutcome, SessionResult, TesterPolicy};
use super::ProtocolError;
use crate::adversary::{CheatConfig, TesterLieMode};
use crate::bits::Bit;
use crate::boolfn::Decomposition;
use crate::qsim::{ghz_state, padded_ghz_state, MeasurementSetting};

/// Physical realisation of the padded scheme: coherent qubit swapping with
/// conditional Hadamards, or the premeasured five-qubit ensemble.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BVariant {
    QubitSwap,
    Ensemble,
}

/// The enumerable two-party schemes (scheme C is analysed by sampling
/// campaigns, not branch enumeration).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TwoPartyScheme {
    A,
    B(BVariant),
    BOneSided,
}

const PARTIES: [PartyId; 3] = [PartyId::Alice, PartyId::Bob, PartyId::Charlie];

/// Per-term evaluated inputs plus the cheating tweaks that apply inside a
/// single GHZ round.
pub(crate) struct TermRun {
    pub(crate) p_bit: Bit,
    pub(crate) q_bit: Bit,
    /// Fake-pad attack: flip the pad-masked bit Alice sends.
    pub(crate) flip_sent_a: bool,
    /// Fake-pad attack on Bob's side.
    pub(crate) flip_sent_b: bool,
}

pub(crate) struct BCoreLabels {
    pub(crate) handover: [&'static str; 3],
    pub(crate) private_bits: &'static str,
}

pub(crate) const B_LABELS: BCoreLabels = BCoreLabels {
    handover: ["B.4", "B.6", "B.8"],
    private_bits: "B.10",
};
const B1_LABELS: BCoreLabels = BCoreLabels {
    handover: ["B1.4", "B1.6", "B1.8"],
    private_bits: "B1.10",
};
const C_LABELS: BCoreLabels = BCoreLabels {
    handover: ["C.6", "C.8", "C.10"],
    private_bits: "C.12",
};

fn check_arity(decomp: &Decomposition, x: &[Bit], y: &[Bit]) -> Result<(), ProtocolError> {
    if x.len() != decomp.alice_variables().len() {
        return Err(ProtocolError::ArityMismatch {
            party: decomp.alice_name().to_string(),
            got: x.len(),
            expected: decomp.alice_variables().len(),
        });
    }
    if y.len() != decomp.bob_variables().len() {
        return Err(ProtocolError::ArityMismatch {
            party: decomp.bob_name().to_string(),
            got: y.len(),
            expected: decomp.bob_variables().len(),
        });
    }
    Ok(())
}

/// One padded GHZ round shared by schemes B, B1, C and the n-party scheme:
/// pads, state preparation (by swapping or from the ensemble), pad-masked
/// bits to the third party, and the three measurements. Returns the three
/// outcome bits.
pub(crate) fn run_b_core(
    session: &mut Session,
    roles: (PartyId, PartyId, PartyId),
    variant: BVariant,
    labels: &BCoreLabels,
    term: &TermRun,
) -> Result<(Bit, Bit, Bit), ProtocolError> {
    let (alice, bob, charlie) = roles;
    session.assign_qubits(&[(0, alice), (1, bob), (2, charlie)]);

    let (p_a, p_b, mut state) = match variant {
        BVariant::QubitSwap => {
            let mut state = ghz_state();
            let p_a = session.coin(&[alice]);
            let p_b = session.coin(&[bob]);
            // First cyclic permutation: Charlie→Alice, Alice→Bob, Bob→Charlie.
            session.handover_round(
                &[(charlie, alice, 2), (alice, bob, 0), (bob, charlie, 1)],
                labels.handover[0],
            );
            if p_a.is_one() {
                debug_assert_eq!(session.holder_of(2), Some(alice));
                state = state.apply_hadamard(2)?;
            }
            // Second permutation: Alice→Bob, Bob→Charlie, Charlie→Alice.
            session.handover_round(
                &[(alice, bob, 2), (bob, charlie, 0), (charlie, alice, 1)],
                labels.handover[1],
            );
            if p_b.is_one() {
                debug_assert_eq!(session.holder_of(2), Some(bob));
                state = state.apply_hadamard(2)?;
            }
            // Third permutation restores initial custody.
            session.handover_round(
                &[(charlie, alice, 0), (alice, bob, 1), (bob, charlie, 2)],
                labels.handover[2],
            );
            (p_a, p_b, state)
        }
        BVariant::Ensemble => {
            // The pad bits are the computational-basis outcomes of the two
            // ensemble pad qubits; the remaining three qubits are already in
            // the padded state.
            let p_a = session.coin(&[alice]);
            let p_b = session.coin(&[bob]);
            (p_a, p_b, padded_ghz_state(p_a, p_b))
        }
    };

    let sent_a = term.p_bit ^ p_a ^ Bit(term.flip_sent_a);
    let sent_b = term.q_bit ^ p_b ^ Bit(term.flip_sent_b);
    session.secure_send(alice, charlie, sent_a, labels.private_bits);
    session.secure_send(bob, charlie, sent_b, labels.private_bits);
    // The third party derives its setting from what it received.
    let charlie_setting = sent_a ^ sent_b;

    let (m1, next) = session.measure(alice, 0, &state, MeasurementSetting(term.p_bit))?;
    state = next;
    let (m2, next) = session.measure(bob, 1, &state, MeasurementSetting(term.q_bit))?;
    state = next;
    let (m3, _) = session.measure(charlie, 2, &state, MeasurementSetting(charlie_setting))?;
    Ok((m1, m2, m3))
}

pub(crate) fn execute_scheme_a(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    check_arity(decomp, x, y)?;
    let mut session = Session::new(driver, &PARTIES);
    session.set_inputs(PartyId::Alice, x.to_vec());
    session.set_inputs(PartyId::Bob, y.to_vec());

    let p_bits = decomp.eval_p(x);
    let q_bits = decomp.eval_q(y);
    let (mut s_a, mut s_b, mut s_c) = (Bit::ZERO, Bit::ZERO, Bit::ZERO);

    for (p, q) in p_bits.iter().zip(&q_bits) {
        // Shared random bit, then the masked polynomial bits to Charlie.
        let r = session.coin(&[PartyId::Alice, PartyId::Bob]);
        let masked_p = *p ^ r;
        let masked_q = *q ^ r;
        session.secure_send(PartyId::Alice, PartyId::Charlie, masked_p, "A.4");
        session.secure_send(PartyId::Bob, PartyId::Charlie, masked_q, "A.5");
        let parity = masked_p ^ masked_q;

        session.assign_qubits(&[
            (0, PartyId::Alice),
            (1, PartyId::Bob),
            (2, PartyId::Charlie),
        ]);
        let state = ghz_state();
        let (m1, state) = session.measure(PartyId::Alice, 0, &state, MeasurementSetting(*p))?;
        let (m2, state) = session.measure(PartyId::Bob, 1, &state, MeasurementSetting(*q))?;
        let (m3, _) = session.measure(PartyId::Charlie, 2, &state, MeasurementSetting(parity))?;
        s_a ^= m1;
        s_b ^= m2;
        s_c ^= m3;
    }

    session.secure_send(PartyId::Alice, PartyId::Charlie, s_a, "A.8");
    session.secure_send(PartyId::Bob, PartyId::Charlie, s_b, "A.8");
    let f = s_a ^ s_b ^ s_c;
    session.broadcast(PartyId::Charlie, f, "A.9");
    Ok(session.finish(SessionOutcome::Value(f)))
}

pub(crate) fn execute_scheme_b(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    variant: BVariant,
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    check_arity(decomp, x, y)?;
    let mut session = Session::new(driver, &PARTIES);
    session.set_inputs(PartyId::Alice, x.to_vec());
    session.set_inputs(PartyId::Bob, y.to_vec());

    let p_bits = decomp.eval_p(x);
    let q_bits = decomp.eval_q(y);
    let (mut s_a, mut s_b, mut s_c) = (Bit::ZERO, Bit::ZERO, Bit::ZERO);
    let roles = (PartyId::Alice, PartyId::Bob, PartyId::Charlie);

    for (p, q) in p_bits.iter().zip(&q_bits) {
        let term = TermRun {
            p_bit: *p,
            q_bit: *q,
            flip_sent_a: false,
            flip_sent_b: false,
        };
        let (m1, m2, m3) = run_b_core(&mut session, roles, variant, &B_LABELS, &term)?;
        s_a ^= m1;
        s_b ^= m2;
        s_c ^= m3;
    }

    session.secure_send(PartyId::Alice, PartyId::Charlie, s_a, "B.12");
    session.secure_send(PartyId::Bob, PartyId::Charlie, s_b, "B.12");
    let f = s_a ^ s_b ^ s_c;
    session.broadcast(PartyId::Charlie, f, "B.13");
    Ok(session.finish(SessionOutcome::Value(f)))
}

pub(crate) fn execute_scheme_b_one_sided(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    check_arity(decomp, x, y)?;
    let mut session = Session::new(driver, &PARTIES);
    session.set_inputs(PartyId::Alice, x.to_vec());
    session.set_inputs(PartyId::Bob, y.to_vec());

    let p_bits = decomp.eval_p(x);
    let q_bits = decomp.eval_q(y);
    let (mut s_a, mut s_b, mut s_c) = (Bit::ZERO, Bit::ZERO, Bit::ZERO);
    let roles = (PartyId::Alice, PartyId::Bob, PartyId::Charlie);

    for (p, q) in p_bits.iter().zip(&q_bits) {
        let term = TermRun {
            p_bit: *p,
            q_bit: *q,
            flip_sent_a: false,
            flip_sent_b: false,
        };
        let (m1, m2, m3) = run_b_core(&mut session, roles, BVariant::QubitSwap, &B1_LABELS, &term)?;
        s_a ^= m1;
        s_b ^= m2;
        s_c ^= m3;
    }

    // One-sided ending: Alice's summation goes to Charlie, Charlie's parity
    // goes to Bob, and only Bob learns the value.
    session.secure_send(PartyId::Alice, PartyId::Charlie, s_a, "B1.11");
    let charlie_parity = s_a ^ s_c;
    session.secure_send(PartyId::Charlie, PartyId::Bob, charlie_parity, "B1.12");
    let f_at_bob = s_b ^ charlie_parity;
    Ok(session.finish(SessionOutcome::Value(f_at_bob)))
}

/// What a party actually does in one repetition of scheme C, after cheats.
struct TesterBehavior {
    /// The party zeroes its polynomial bits this repetition.
    zeroes: bool,
    /// The party announces having acted as a tester.
    announces: bool,
}

fn tester_behavior(party: PartyId, tester_coin: bool, cheat: &CheatConfig) -> TesterBehavior {
    match cheat {
        CheatConfig::TesterLie { by, mode } if *by == party => match mode {
            // Tests without announcing it.
            TesterLieMode::SilentTester => TesterBehavior {
                zeroes: tester_coin,
                announces: false,
            },
            // Announces without testing.
            TesterLieMode::FalseClaim => TesterBehavior {
                zeroes: false,
                announces: tester_coin,
            },
        },
        _ => TesterBehavior {
            zeroes: tester_coin,
            announces: tester_coin,
        },
    }
}

pub(crate) fn execute_scheme_c(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    policy: TesterPolicy,
    cheat: &CheatConfig,
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    check_arity(decomp, x, y)?;
    TesterPolicy::new(policy.t_a, policy.t_b, policy.n_rep)?;
    cheat.check_party(&PARTIES[..])?;

    let mut session = Session::new(driver, &PARTIES);
    session.set_inputs(PartyId::Alice, x.to_vec());
    session.set_inputs(PartyId::Bob, y.to_vec());

    let p_bits = decomp.eval_p(x);
    let q_bits = decomp.eval_q(y);
    let roles = (PartyId::Alice, PartyId::Bob, PartyId::Charlie);

    // Reference value from repetitions where nobody announced testing.
    let mut reference: Option<Bit> = None;
    let mut halt = None;

    for j in 1..=policy.n_rep {
        let alice_coin = session.bernoulli(PartyId::Alice, policy.t_a)?;
        let bob_coin = session.bernoulli(PartyId::Bob, policy.t_b)?;
        let alice = tester_behavior(PartyId::Alice, alice_coin, cheat);
        let bob = tester_behavior(PartyId::Bob, bob_coin, cheat);

        // A sum-flipping cheater skips the flip while acting as a tester:
        // flipping a forced-zero repetition would expose it immediately.
        let flip = |party: PartyId, zeroes: bool| {
            matches!(cheat, CheatConfig::FlipSum { by } if *by == party) && !zeroes
        };
        let flip_a = flip(PartyId::Alice, alice.zeroes);
        let flip_b = flip(PartyId::Bob, bob.zeroes);
        let flip_c = matches!(
            cheat,
            CheatConfig::FlipSum {
                by: PartyId::Charlie
            }
        );
        let fake_pad_a = matches!(cheat, CheatConfig::FakePad { by: PartyId::Alice });
        let fake_pad_b = matches!(cheat, CheatConfig::FakePad { by: PartyId::Bob });

        let (mut s_a, mut s_b, mut s_c) = (Bit::ZERO, Bit::ZERO, Bit::ZERO);
        for (p, q) in p_bits.iter().zip(&q_bits) {
            let term = TermRun {
                p_bit: if alice.zeroes { Bit::ZERO } else { *p },
                q_bit: if bob.zeroes { Bit::ZERO } else { *q },
                flip_sent_a: fake_pad_a,
                flip_sent_b: fake_pad_b,
            };
            let (m1, m2, m3) =
                run_b_core(&mut session, roles, BVariant::Ensemble, &C_LABELS, &term)?;
            s_a ^= m1;
            s_b ^= m2;
            s_c ^= m3;
        }

        // Concurrent announcement round: all bits are committed before any
        // is revealed, so none can depend on another in the same round.
        let announced_a = s_a ^ Bit(flip_a);
        let announced_b = s_b ^ Bit(flip_b);
        let announced_c = s_c ^ Bit(flip_c);
        session.broadcast(PartyId::Alice, announced_a, "C.14.sum");
        session.broadcast(PartyId::Bob, announced_b, "C.14.sum");
        session.broadcast(PartyId::Charlie, announced_c, "C.14.sum");
        session.broadcast(PartyId::Alice, Bit(alice.announces), "C.14.tester");
        session.broadcast(PartyId::Bob, Bit(bob.announces), "C.14.tester");

        let f_j = announced_a ^ announced_b ^ announced_c;

        // Step 16: an announced tester forces output 0.
        if (alice.announces || bob.announces) && f_j.is_one() {
            halt = Some(SessionOutcome::Halted {
                repetition: j,
                reason: HaltReason::TesterObservedNonzero,
            });
            break;
        }
        // Step 17: repetitions with no announced tester must agree with
        // every earlier such repetition.
        if !alice.announces && !bob.announces {
            match reference {
                None => reference = Some(f_j),
                Some(expected) if expected != f_j => {
                    halt = Some(SessionOutcome::Halted {
                        repetition: j,
                        reason: HaltReason::InconsistentRepetition,
                    });
                    break;
                }
                Some(_) => {}
            }
        }
    }

    let outcome = halt.unwrap_or(match reference {
        Some(value) => SessionOutcome::Value(value),
        None => SessionOutcome::Inconclusive,
    });
    Ok(session.finish(outcome))
}

/// Run scheme A: per term, a shared random bit masks the polynomial bits
/// sent to Charlie, the three parties measure the GHZ state, and Charlie
/// reveals the accumulated value.
pub fn run_scheme_a<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    rng: &mut R,
) -> Result<SessionResult, ProtocolError> {
    let mut driver = SampledDriver::new(rng);
    execute_scheme_a(decomp, x, y, &mut driver)
}

/// Run scheme B: like scheme A, but Charlie's copy of the parity is hidden
/// by Hadamard pads, realised either by coherent qubit swapping or by the
/// premeasured ensemble.
pub fn run_scheme_b<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    rng: &mut R,
    variant: BVariant,
) -> Result<SessionResult, ProtocolError> {
    let mut driver = SampledDriver::new(rng);
    execute_scheme_b(decomp, x, y, variant, &mut driver)
}

/// Run the one-sided variant of scheme B: only Bob learns the value.
pub fn run_scheme_b_one_sided<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    rng: &mut R,
) -> Result<SessionResult, ProtocolError> {
    let mut driver = SampledDriver::new(rng);
    execute_scheme_b_one_sided(decomp, x, y, &mut driver)
}

/// Run scheme C: repeated scheme-B executions in which each input party
/// randomly zeroes its polynomial bits as a security tester, everybody
/// announces, and the halt rules of steps 16 and 17 expose cheating.
pub fn run_scheme_c<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    rng: &mut R,
    policy: TesterPolicy,
    cheat: &CheatConfig,
) -> Result<SessionResult, ProtocolError> {
    let mut driver = SampledDriver::new(rng);
    execute_scheme_c(decomp, x, y, policy, cheat, &mut driver)
}

pub(crate) fn execute_two_party(
    scheme: TwoPartyScheme,
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    match scheme {
        TwoPartyScheme::A => execute_scheme_a(decomp, x, y, driver),
        TwoPartyScheme::B(variant) => execute_scheme_b(decomp, x, y, variant, driver),
        TwoPartyScheme::BOneSided => execute_scheme_b_one_sided(decomp, x, y, driver),
    }
}
