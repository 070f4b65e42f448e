//! Protocol-level tests: correctness on exhaustive grids, determinism,
//! view structure, variant equivalence, and the halt rules.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::choice::ChoiceDriver;
use super::twoparty::execute_scheme_c;
use super::*;
use crate::adversary::{CheatConfig, TesterLieMode};
use crate::bits::{parity, Bit};
use crate::boolfn::{
    degree2_decomposition, inner_product_decomposition, parse_expression, Decomposition,
    Degree2Form, PartySpec,
};

fn parties(vars: &[(&str, &[&str])]) -> Vec<PartySpec> {
    vars.iter()
        .map(|(name, vs)| PartySpec {
            name: (*name).into(),
            variables: vs.iter().map(|v| (*v).into()).collect(),
        })
        .collect()
}

fn two_party_decomp(expr: &str, alice: &[&str], bob: &[&str]) -> Decomposition {
    let f = parse_expression(expr, &parties(&[("alice", alice), ("bob", bob)])).unwrap();
    inner_product_decomposition(&f).unwrap()
}

fn and_decomp() -> Decomposition {
    two_party_decomp("x1 & y1", &["x1"], &["y1"])
}

fn all_bit_vectors(width: usize) -> Vec<Vec<Bit>> {
    (0..1usize << width)
        .map(|raw| {
            (0..width)
                .map(|k| Bit(raw & (1 << (width - 1 - k)) != 0))
                .collect()
        })
        .collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn expected(decomp: &Decomposition, x: &[Bit], y: &[Bit]) -> Bit {
    decomp.eval(x, y)
}

#[test]
fn scheme_a_and_example() {
    let decomp = and_decomp();
    let result = run_scheme_a(&decomp, &[Bit::ONE], &[Bit::ONE], &mut rng(1)).unwrap();
    assert_eq!(result.outcome, SessionOutcome::Value(Bit::ONE));
    // Charlie's received masked bits XOR to the parity P₁⊕Q₁ = 0.
    let charlie = result.view(PartyId::Charlie);
    let masked: Vec<Bit> = charlie
        .received
        .iter()
        .filter(|m| m.step_label == "A.4" || m.step_label == "A.5")
        .map(|m| m.bit)
        .collect();
    assert_eq!(masked.len(), 2);
    assert_eq!(masked[0] ^ masked[1], Bit::ZERO);
}

#[test]
fn scheme_a_correct_on_exhaustive_grid() {
    let decomp = two_party_decomp("x1 ^ y1", &["x1"], &["y1"]);
    for x in all_bit_vectors(1) {
        for y in all_bit_vectors(1) {
            for seed in 0..100 {
                let result = run_scheme_a(&decomp, &x, &y, &mut rng(seed)).unwrap();
                assert_eq!(
                    result.outcome,
                    SessionOutcome::Value(expected(&decomp, &x, &y))
                );
            }
        }
    }
}

#[test]
fn scheme_a_arity_mismatch() {
    let decomp = and_decomp();
    assert!(matches!(
        run_scheme_a(&decomp, &[Bit::ONE, Bit::ZERO], &[Bit::ONE], &mut rng(1)),
        Err(ProtocolError::ArityMismatch { .. })
    ));
}

#[test]
fn scheme_b_correct_in_both_variants() {
    let decomp = and_decomp();
    for variant in [BVariant::QubitSwap, BVariant::Ensemble] {
        for x in all_bit_vectors(1) {
            for y in all_bit_vectors(1) {
                for seed in 0..50 {
                    let result = run_scheme_b(&decomp, &x, &y, &mut rng(seed), variant).unwrap();
                    assert_eq!(
                        result.outcome,
                        SessionOutcome::Value(expected(&decomp, &x, &y)),
                        "variant {variant:?} x={x:?} y={y:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn scheme_b_forced_equal_pads_cancel() {
    // Filter the exact enumeration down to branches with p_a = p_b = 1: the
    // third party's derived setting equals P₁⊕Q₁ and the output stays
    // correct.
    let decomp = and_decomp();
    let x = [Bit::ONE];
    let y = [Bit::ONE];
    let sessions =
        enumerate_sessions(TwoPartyScheme::B(BVariant::Ensemble), &decomp, &x, &y).unwrap();
    let mut seen = 0;
    for (result, weight) in &sessions {
        let alice_pads = &result.view(PartyId::Alice).local_randomness[&PartyId::Alice];
        let bob_pads = &result.view(PartyId::Bob).local_randomness[&PartyId::Bob];
        if alice_pads == &vec![Bit::ONE] && bob_pads == &vec![Bit::ONE] {
            seen += 1;
            assert!(*weight > 0.0);
            let charlie = result.view(PartyId::Charlie);
            let setting = charlie.received[0].bit ^ charlie.received[1].bit;
            assert_eq!(setting, Bit::ZERO, "pads cancel: setting = P⊕Q = 1⊕1");
            assert_eq!(result.outcome, SessionOutcome::Value(Bit::ONE));
        }
    }
    assert!(seen > 0, "forced-pad branches exist");
}

#[test]
fn scheme_b_charlie_received_pair_is_uniform_for_every_input() {
    // Exact branch enumeration: the pad-masked pair Charlie receives is
    // uniform on {0,1}² regardless of (P₁, Q₁).
    let decomp = and_decomp();
    for x in all_bit_vectors(1) {
        for y in all_bit_vectors(1) {
            let sessions =
                enumerate_sessions(TwoPartyScheme::B(BVariant::Ensemble), &decomp, &x, &y).unwrap();
            let mut pair_probs: BTreeMap<(Bit, Bit), f64> = BTreeMap::new();
            for (result, weight) in &sessions {
                let charlie = result.view(PartyId::Charlie);
                let key = (charlie.received[0].bit, charlie.received[1].bit);
                *pair_probs.entry(key).or_insert(0.0) += weight;
            }
            assert_eq!(pair_probs.len(), 4);
            for prob in pair_probs.values() {
                assert!((prob - 0.25).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn scheme_b_one_sided_routes_output_to_bob_only() {
    let decomp = and_decomp();
    let result = run_scheme_b_one_sided(&decomp, &[Bit::ONE], &[Bit::ONE], &mut rng(3)).unwrap();
    assert_eq!(result.outcome, SessionOutcome::Value(Bit::ONE));
    // Nothing is broadcast; Bob derives the value from Charlie's parity.
    assert!(result.transcript.announcements.is_empty());
    let bob = result.view(PartyId::Bob);
    assert!(bob.received.iter().any(|m| m.step_label == "B1.12"));
    let alice = result.view(PartyId::Alice);
    assert!(alice.announced.is_empty());
    assert!(alice.received.is_empty());
}

#[test]
fn scheme_b_one_sided_correct_on_exhaustive_grid() {
    let decomp = two_party_decomp("x1 ^ y1", &["x1"], &["y1"]);
    for x in all_bit_vectors(1) {
        for y in all_bit_vectors(1) {
            for seed in 0..100 {
                let result = run_scheme_b_one_sided(&decomp, &x, &y, &mut rng(seed)).unwrap();
                assert_eq!(
                    result.outcome,
                    SessionOutcome::Value(expected(&decomp, &x, &y))
                );
            }
        }
    }
}

fn policy(n_rep: usize) -> TesterPolicy {
    TesterPolicy::new(0.25, 0.25, n_rep).unwrap()
}

/// Per-repetition records reconstructed from the announcement stream.
fn scheme_c_repetitions(result: &SessionResult) -> Vec<(Bit, bool, bool)> {
    let mut reps = Vec::new();
    let announcements = &result.transcript.announcements;
    let mut i = 0;
    while i + 4 < announcements.len() {
        let chunk = &announcements[i..i + 5];
        assert!(chunk[..3].iter().all(|a| a.step_label == "C.14.sum"));
        assert!(chunk[3..].iter().all(|a| a.step_label == "C.14.tester"));
        let f_j = chunk[0].bit ^ chunk[1].bit ^ chunk[2].bit;
        reps.push((f_j, chunk[3].bit.is_one(), chunk[4].bit.is_one()));
        i += 5;
    }
    reps
}

#[test]
fn scheme_c_cheat_free_is_correct_and_never_halts() {
    let decomp = and_decomp();
    for x in all_bit_vectors(1) {
        for y in all_bit_vectors(1) {
            for seed in 0..50 {
                let result = run_scheme_c(
                    &decomp,
                    &x,
                    &y,
                    &mut rng(seed),
                    policy(20),
                    &CheatConfig::None,
                )
                .unwrap();
                assert!(!result.outcome.is_halted(), "x={x:?} y={y:?} seed={seed}");
                if let SessionOutcome::Value(v) = result.outcome {
                    assert_eq!(v, expected(&decomp, &x, &y));
                }
                // Tester repetitions compute 0; no-tester repetitions agree.
                for (f_j, tester_a, tester_b) in scheme_c_repetitions(&result) {
                    if tester_a || tester_b {
                        assert_eq!(f_j, Bit::ZERO);
                    } else {
                        assert_eq!(f_j, expected(&decomp, &x, &y));
                    }
                }
            }
        }
    }
}

/// Driver with prescribed tester decisions and seeded quantum randomness.
struct PatternDriver {
    pattern: Vec<bool>,
    next: usize,
    rng: ChaCha8Rng,
}

impl ChoiceDriver for PatternDriver {
    fn coin(&mut self) -> Bit {
        use rand::Rng;
        Bit(self.rng.random::<bool>())
    }

    fn branch(&mut self, prob_plus: f64) -> Bit {
        use rand::Rng;
        Bit(self.rng.random::<f64>() >= prob_plus)
    }

    fn bernoulli(&mut self, _p: f64) -> Result<bool, ProtocolError> {
        let value = self.pattern[self.next];
        self.next += 1;
        Ok(value)
    }
}

#[test]
fn scheme_c_no_spurious_halt_over_exhaustive_tester_patterns() {
    // Every tester on/off pattern for both parties across 5 repetitions,
    // honest execution: the halt rules must never fire.
    let decomp = and_decomp();
    let n_rep = 5;
    for pattern_bits in 0..(1u32 << (2 * n_rep)) {
        let pattern: Vec<bool> = (0..2 * n_rep)
            .map(|k| pattern_bits & (1 << k) != 0)
            .collect();
        let mut driver = PatternDriver {
            pattern,
            next: 0,
            rng: rng(11),
        };
        let result = execute_scheme_c(
            &decomp,
            &[Bit::ONE],
            &[Bit::ONE],
            policy(n_rep),
            &CheatConfig::None,
            &mut driver,
        )
        .unwrap();
        match result.outcome {
            SessionOutcome::Halted { .. } => panic!("spurious halt for pattern {pattern_bits:b}"),
            SessionOutcome::Value(v) => assert_eq!(v, Bit::ONE),
            // All-tester patterns never establish a value.
            SessionOutcome::Inconclusive => {
                let reps = scheme_c_repetitions(&result);
                assert!(reps.iter().all(|(_, a, b)| *a || *b));
            }
        }
    }
}

#[test]
fn scheme_c_flip_sum_detected_at_first_exposed_repetition() {
    let decomp = and_decomp();
    let cheat = CheatConfig::FlipSum { by: PartyId::Bob };
    let mut detections = 0;
    for seed in 0..200 {
        let result = run_scheme_c(
            &decomp,
            &[Bit::ONE],
            &[Bit::ONE],
            &mut rng(seed),
            policy(200),
            &cheat,
        )
        .unwrap();
        let reps = scheme_c_repetitions(&result);
        match result.outcome {
            SessionOutcome::Halted { repetition, reason } => {
                detections += 1;
                assert_eq!(reason, HaltReason::TesterObservedNonzero);
                // Detection fires exactly at the first repetition where
                // Alice tested and Bob did not.
                let first_exposed = reps
                    .iter()
                    .position(|(_, a, b)| *a && !*b)
                    .map(|i| i + 1)
                    .expect("halted runs contain an exposed repetition");
                assert_eq!(repetition, first_exposed);
            }
            other => panic!("flip-sum escaped detection: {other:?}"),
        }
    }
    assert_eq!(detections, 200);
}

#[test]
fn scheme_c_tester_lie_with_zero_function_is_harmless() {
    let decomp = and_decomp();
    for mode in [TesterLieMode::SilentTester, TesterLieMode::FalseClaim] {
        for seed in 0..100 {
            let result = run_scheme_c(
                &decomp,
                &[Bit::ZERO],
                &[Bit::ONE],
                &mut rng(seed),
                policy(20),
                &CheatConfig::TesterLie {
                    by: PartyId::Alice,
                    mode,
                },
            )
            .unwrap();
            assert!(!result.outcome.is_halted(), "mode {mode:?} seed {seed}");
            if let SessionOutcome::Value(v) = result.outcome {
                assert_eq!(v, Bit::ZERO);
            }
        }
    }
}

#[test]
fn determinism_same_seed_same_session() {
    let decomp = two_party_decomp("!(x1 ^ y1) & !(x2 ^ y2)", &["x1", "x2"], &["y1", "y2"]);
    let x = [Bit::ONE, Bit::ZERO];
    let y = [Bit::ONE, Bit::ONE];
    let a = run_scheme_b(&decomp, &x, &y, &mut rng(42), BVariant::QubitSwap).unwrap();
    let b = run_scheme_b(&decomp, &x, &y, &mut rng(42), BVariant::QubitSwap).unwrap();
    assert_eq!(a, b);
    let c = run_scheme_c(
        &decomp,
        &x,
        &y,
        &mut rng(42),
        policy(10),
        &CheatConfig::FakePad { by: PartyId::Alice },
    )
    .unwrap();
    let d = run_scheme_c(
        &decomp,
        &x,
        &y,
        &mut rng(42),
        policy(10),
        &CheatConfig::FakePad { by: PartyId::Alice },
    )
    .unwrap();
    assert_eq!(c, d);
}

#[test]
fn view_closure_no_foreign_secure_payloads() {
    let decomp = and_decomp();
    let result = run_scheme_b(
        &decomp,
        &[Bit::ONE],
        &[Bit::ZERO],
        &mut rng(5),
        BVariant::QubitSwap,
    )
    .unwrap();
    for (party, view) in &result.views {
        for msg in &view.received {
            assert_eq!(msg.to, *party, "secure message leaked into another view");
        }
    }
    // Every secure-classical message in the transcript appears in exactly
    // its recipient's view.
    for msg in &result.transcript.messages {
        if msg.channel == Channel::SecureClassical {
            let Recipient::Party(to) = msg.to else {
                panic!("secure messages have exactly one recipient")
            };
            let Payload::Bit(bit) = msg.payload else {
                panic!("secure messages carry bits")
            };
            let count = result.views[&to]
                .received
                .iter()
                .filter(|m| m.from == msg.from && m.bit == bit && m.step_label == msg.step_label)
                .count();
            assert!(count >= 1);
        }
    }
}

#[test]
fn qubit_swap_rounds_keep_single_custody() {
    let decomp = and_decomp();
    let result = run_scheme_b(
        &decomp,
        &[Bit::ONE],
        &[Bit::ONE],
        &mut rng(6),
        BVariant::QubitSwap,
    )
    .unwrap();
    let handovers: Vec<_> = result
        .transcript
        .messages
        .iter()
        .filter(|m| m.channel == Channel::QubitHandover)
        .collect();
    // Three rounds of three handovers for the single term.
    assert_eq!(handovers.len(), 9);
    for round in handovers.chunks(3) {
        let mut senders: Vec<PartyId> = round.iter().map(|m| m.from).collect();
        let mut receivers: Vec<PartyId> = round
            .iter()
            .map(|m| match m.to {
                Recipient::Party(p) => p,
                Recipient::Broadcast => panic!("handover cannot broadcast"),
            })
            .collect();
        senders.sort();
        receivers.sort();
        // A cyclic permutation: everyone sends one and receives one.
        assert_eq!(
            senders,
            vec![PartyId::Alice, PartyId::Bob, PartyId::Charlie]
        );
        assert_eq!(
            receivers,
            vec![PartyId::Alice, PartyId::Bob, PartyId::Charlie]
        );
    }
    // The ensemble variant needs no quantum communication at all.
    let ensemble = run_scheme_b(
        &decomp,
        &[Bit::ONE],
        &[Bit::ONE],
        &mut rng(6),
        BVariant::Ensemble,
    )
    .unwrap();
    assert!(ensemble
        .transcript
        .messages
        .iter()
        .all(|m| m.channel != Channel::QubitHandover));
}

#[test]
fn variant_equivalence_exact_view_distributions() {
    for decomp in [and_decomp(), two_party_decomp("x1 ^ y1", &["x1"], &["y1"])] {
        for x in all_bit_vectors(1) {
            for y in all_bit_vectors(1) {
                let swap = enumerate_views(TwoPartyScheme::B(BVariant::QubitSwap), &decomp, &x, &y)
                    .unwrap();
                let ensemble =
                    enumerate_views(TwoPartyScheme::B(BVariant::Ensemble), &decomp, &x, &y)
                        .unwrap();
                for (party, dist) in &swap {
                    assert!(
                        total_variation(dist, &ensemble[party]) < 1e-12,
                        "{party} views differ between variants"
                    );
                }
            }
        }
    }
}

#[test]
fn scheme_a_charlie_learns_term_parities_deterministically() {
    // In every enumeration branch, the two masked bits Charlie receives
    // per term XOR to the same value: the term parity P_i⊕Q_i.
    let decomp = two_party_decomp("x1 ^ y1", &["x1"], &["y1"]);
    for x in all_bit_vectors(1) {
        for y in all_bit_vectors(1) {
            let parities: Vec<Bit> = decomp
                .eval_p(&x)
                .iter()
                .zip(decomp.eval_q(&y))
                .map(|(p, q)| *p ^ q)
                .collect();
            let sessions = enumerate_sessions(TwoPartyScheme::A, &decomp, &x, &y).unwrap();
            for (result, _) in &sessions {
                let charlie = result.view(PartyId::Charlie);
                let received: Vec<Bit> = charlie
                    .received
                    .iter()
                    .filter(|m| m.step_label == "A.4" || m.step_label == "A.5")
                    .map(|m| m.bit)
                    .collect();
                assert_eq!(received.len(), 2 * parities.len());
                for (i, want) in parities.iter().enumerate() {
                    assert_eq!(received[2 * i] ^ received[2 * i + 1], *want);
                }
            }
        }
    }
}

#[test]
fn enumeration_weights_sum_to_one() {
    let decomp = two_party_decomp("x1 ^ y1", &["x1"], &["y1"]);
    for scheme in [
        TwoPartyScheme::A,
        TwoPartyScheme::B(BVariant::QubitSwap),
        TwoPartyScheme::B(BVariant::Ensemble),
        TwoPartyScheme::BOneSided,
    ] {
        let sessions = enumerate_sessions(scheme, &decomp, &[Bit::ONE], &[Bit::ZERO]).unwrap();
        let total: f64 = sessions.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-9, "{scheme:?} total {total}");
        // Every enumerated branch produces the correct output.
        for (result, _) in &sessions {
            assert_eq!(result.outcome, SessionOutcome::Value(Bit::ONE));
        }
    }
}

fn pairwise3_form() -> Degree2Form {
    let f = parse_expression(
        "(x & y) ^ (y & z) ^ (x & z)",
        &parties(&[("p1", &["x"]), ("p2", &["y"]), ("p3", &["z"])]),
    )
    .unwrap();
    degree2_decomposition(&f).unwrap()
}

fn multiparty_input_map(bits: &[Bit]) -> BTreeMap<PartyId, Vec<Bit>> {
    bits.iter()
        .enumerate()
        .map(|(j, b)| (PartyId::Party(j + 1), vec![*b]))
        .collect()
}

#[test]
fn multiparty_pairwise_example() {
    let form = pairwise3_form();
    let inputs = multiparty_input_map(&[Bit::ONE, Bit::ONE, Bit::ZERO]);
    let result = run_multiparty(&form, &inputs, &mut rng(1), &MultipartyInner::B).unwrap();
    assert_eq!(result.outcome, SessionOutcome::Value(Bit::ONE));
}

#[test]
fn multiparty_exhaustive_n4() {
    let f = parse_expression(
        "(a & b) ^ (a & c) ^ (a & d) ^ (b & c) ^ (b & d) ^ (c & d)",
        &parties(&[
            ("p1", &["a"]),
            ("p2", &["b"]),
            ("p3", &["c"]),
            ("p4", &["d"]),
        ]),
    )
    .unwrap();
    let form = degree2_decomposition(&f).unwrap();
    for raw in 0..16usize {
        let bits: Vec<Bit> = (0..4).map(|k| Bit(raw & (1 << (3 - k)) != 0)).collect();
        let slices: Vec<&[Bit]> = bits.chunks(1).collect();
        let want = f.eval(&slices);
        for seed in 0..20 {
            let result = run_multiparty(
                &form,
                &multiparty_input_map(&bits),
                &mut rng(seed),
                &MultipartyInner::B,
            )
            .unwrap();
            assert_eq!(
                result.outcome,
                SessionOutcome::Value(want),
                "inputs {raw:04b}"
            );
        }
    }
}

#[test]
fn multiparty_local_fold_in_term() {
    // A single-party term rides along with a constant-1 partner.
    let f = parse_expression(
        "x1 ^ (y1 & z1)",
        &parties(&[("p1", &["x1"]), ("p2", &["y1"]), ("p3", &["z1"])]),
    )
    .unwrap();
    let form = degree2_decomposition(&f).unwrap();
    for raw in 0..8usize {
        let bits: Vec<Bit> = (0..3).map(|k| Bit(raw & (1 << (2 - k)) != 0)).collect();
        let slices: Vec<&[Bit]> = bits.chunks(1).collect();
        let want = f.eval(&slices);
        let result = run_multiparty(
            &form,
            &multiparty_input_map(&bits),
            &mut rng(7),
            &MultipartyInner::B,
        )
        .unwrap();
        assert_eq!(result.outcome, SessionOutcome::Value(want));
    }
}

#[test]
fn multiparty_retains_bits_until_final_announcements() {
    let form = pairwise3_form();
    let inputs = multiparty_input_map(&[Bit::ONE, Bit::ONE, Bit::ONE]);
    let result = run_multiparty(&form, &inputs, &mut rng(2), &MultipartyInner::B).unwrap();
    // The only broadcasts are the three final parity announcements.
    assert_eq!(result.transcript.announcements.len(), 3);
    assert!(result
        .transcript
        .announcements
        .iter()
        .all(|a| a.step_label == "M.4"));
    let announced = parity(result.transcript.announcements.iter().map(|a| a.bit));
    assert_eq!(SessionOutcome::Value(announced), result.outcome);
}

#[test]
fn multiparty_tester_inner_is_correct_and_never_halts_honestly() {
    let form = pairwise3_form();
    let inner = MultipartyInner::C {
        tester_probs: vec![0.2; 3],
        n_rep: 15,
    };
    for raw in 0..8usize {
        let bits: Vec<Bit> = (0..3).map(|k| Bit(raw & (1 << (2 - k)) != 0)).collect();
        let slices: Vec<&[Bit]> = bits.chunks(1).collect();
        let f = pairwise3_form();
        let want = f.eval(&slices);
        for seed in 0..20 {
            let result =
                run_multiparty(&form, &multiparty_input_map(&bits), &mut rng(seed), &inner)
                    .unwrap();
            assert!(!result.outcome.is_halted());
            if let SessionOutcome::Value(v) = result.outcome {
                assert_eq!(v, want);
            }
        }
    }
}

#[test]
fn multiparty_missing_inputs_rejected() {
    let form = pairwise3_form();
    let mut inputs = multiparty_input_map(&[Bit::ONE, Bit::ONE, Bit::ZERO]);
    inputs.remove(&PartyId::Party(3));
    assert!(matches!(
        run_multiparty(&form, &inputs, &mut rng(1), &MultipartyInner::B),
        Err(ProtocolError::MissingInputs(_))
    ));
}

#[test]
fn transcript_json_lines_one_message_per_line() {
    let decomp = and_decomp();
    let result = run_scheme_a(&decomp, &[Bit::ONE], &[Bit::ONE], &mut rng(9)).unwrap();
    let lines = result.transcript.to_json_lines();
    assert_eq!(lines.lines().count(), result.transcript.messages.len());
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["seq"], 1);
    assert_eq!(first["from"], "alice");
    assert_eq!(first["step_label"], "A.4");
}

#[test]
fn branch_guard_rejects_oversized_enumerations() {
    // Equality of 3-bit strings decomposes into 8 terms; the padded scheme
    // then has 16^8 branches, far past the guard.
    let decomp = two_party_decomp(
        "!(x1 ^ y1) & !(x2 ^ y2) & !(x3 ^ y3)",
        &["x1", "x2", "x3"],
        &["y1", "y2", "y3"],
    );
    assert_eq!(decomp.m(), 8);
    let x = [Bit::ZERO; 3];
    let y = [Bit::ZERO; 3];
    let started = std::time::Instant::now();
    let err =
        enumerate_sessions(TwoPartyScheme::B(BVariant::Ensemble), &decomp, &x, &y).unwrap_err();
    assert!(matches!(err, ProtocolError::BranchGuardExceeded { .. }));
    // The guard must fire from the first path, not after millions of runs.
    assert!(started.elapsed().as_secs_f64() < 1.0);
}
