//! The n-party scheme for degree-2 functions.
//!
//! Every pair bucket of the [`Degree2Form`] is evaluated by a nominated
//! triple running the padded GHZ round, with measured bits retained
//! unshared. One final announcement round reveals each party's parity of
//! retained bits; the XOR of the announcements is the function value. With
//! the tester-based inner scheme, the whole protocol repeats and two halt
//! rules expose cheating: a repetition whose announced testers cover every
//! pair bucket must produce 0, and repetitions with identical announced
//! tester sets must agree.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::Rng;

use super::choice::{ChoiceDriver, SampledDriver};
use super::session::Session;
use super::twoparty::{run_b_core, BCoreLabels, TermRun, B_LABELS};
use super::types::{HaltReason, PartyId, SessionOutcome, SessionResult};
use super::{BVariant, ProtocolError};
use crate::bits::{parity, Bit};
use crate::boolfn::{eval_anf, Degree2Form};

/// Inner scheme for each triple: the passively secure padded scheme, or the
/// tester-based scheme with per-party tester probabilities and repetitions.
#[derive(Clone, Debug, PartialEq)]
pub enum MultipartyInner {
    B,
    C {
        tester_probs: Vec<f64>,
        n_rep: usize,
    },
}

const MC_LABELS: BCoreLabels = BCoreLabels {
    handover: ["C.6", "C.8", "C.10"],
    private_bits: "C.12",
};

/// Nominate the third party for a pair: the lowest-index party outside it.
fn nominate_third(n: usize, j1: usize, j2: usize) -> usize {
    (0..n)
        .find(|j| *j != j1 && *j != j2)
        .expect("degree-2 form has at least 3 parties")
}

/// Evaluated P-bits per bucket term: `(j1, j2, p_bit_j1, p_bit_j2)`.
type BucketTerms = Vec<(usize, usize, Vec<(Bit, Bit)>)>;

fn evaluate_buckets(
    form: &Degree2Form,
    inputs: &BTreeMap<PartyId, Vec<Bit>>,
) -> Result<BucketTerms, ProtocolError> {
    let n = form.party_count();
    let mut envs: Vec<HashMap<String, Bit>> = Vec::with_capacity(n);
    for j in 0..n {
        let party = PartyId::Party(j + 1);
        let bits = inputs
            .get(&party)
            .ok_or_else(|| ProtocolError::MissingInputs(party.to_string()))?;
        let vars = form.party_variables(j);
        if bits.len() != vars.len() {
            return Err(ProtocolError::ArityMismatch {
                party: party.to_string(),
                got: bits.len(),
                expected: vars.len(),
            });
        }
        envs.push(
            vars.iter()
                .cloned()
                .zip(bits.iter().copied())
                .collect::<HashMap<_, _>>(),
        );
    }
    let mut buckets = Vec::new();
    for ((j1, j2), terms) in form.buckets() {
        let evaluated = terms
            .iter()
            .map(|(poly_hi, poly_lo)| {
                let hi = eval_anf(poly_hi, &envs[*j1]).expect("bucket variables belong to j1");
                let lo = eval_anf(poly_lo, &envs[*j2]).expect("bucket variables belong to j2");
                (hi, lo)
            })
            .collect();
        buckets.push((*j1, *j2, evaluated));
    }
    Ok(buckets)
}

/// Run all bucket triples once; returns each party's parity of retained
/// measurement bits. `zeroed[j]` replaces party j's polynomial bits with 0
/// (security testing).
fn run_all_buckets(
    session: &mut Session,
    n: usize,
    buckets: &BucketTerms,
    labels: &BCoreLabels,
    variant: BVariant,
    zeroed: &[bool],
) -> Result<Vec<Bit>, ProtocolError> {
    let mut parities = vec![Bit::ZERO; n];
    for (j1, j2, terms) in buckets {
        let j3 = nominate_third(n, *j1, *j2);
        let roles = (
            PartyId::Party(j1 + 1),
            PartyId::Party(j2 + 1),
            PartyId::Party(j3 + 1),
        );
        for (p_hi, p_lo) in terms {
            let term = TermRun {
                p_bit: if zeroed[*j1] { Bit::ZERO } else { *p_hi },
                q_bit: if zeroed[*j2] { Bit::ZERO } else { *p_lo },
                flip_sent_a: false,
                flip_sent_b: false,
            };
            let (m1, m2, m3) = run_b_core(session, roles, variant, labels, &term)?;
            parities[*j1] ^= m1;
            parities[*j2] ^= m2;
            parities[j3] ^= m3;
        }
    }
    Ok(parities)
}

pub(crate) fn execute_multiparty(
    form: &Degree2Form,
    inputs: &BTreeMap<PartyId, Vec<Bit>>,
    inner: &MultipartyInner,
    driver: &mut dyn ChoiceDriver,
) -> Result<SessionResult, ProtocolError> {
    let n = form.party_count();
    let participants: Vec<PartyId> = (1..=n).map(PartyId::Party).collect();
    let buckets = evaluate_buckets(form, inputs)?;

    let mut session = Session::new(driver, &participants);
    for (j, party) in participants.iter().enumerate() {
        session.set_inputs(*party, inputs[party].clone());
        let _ = j;
    }

    match inner {
        MultipartyInner::B => {
            let no_testers = vec![false; n];
            let parities = run_all_buckets(
                &mut session,
                n,
                &buckets,
                &B_LABELS,
                BVariant::Ensemble,
                &no_testers,
            )?;
            for (j, p) in parities.iter().enumerate() {
                session.broadcast(PartyId::Party(j + 1), *p, "M.4");
            }
            let f = parity(parities.iter().copied());
            Ok(session.finish(SessionOutcome::Value(f)))
        }
        MultipartyInner::C {
            tester_probs,
            n_rep,
        } => {
            if tester_probs.len() != n {
                return Err(ProtocolError::TesterProbabilityCount {
                    expected: n,
                    got: tester_probs.len(),
                });
            }
            for t in tester_probs {
                if !(*t > 0.0 && *t < 0.5) {
                    return Err(ProtocolError::InvalidTesterProbability(*t));
                }
            }
            if *n_rep == 0 {
                return Err(ProtocolError::InvalidRepetitionCount);
            }

            // Reference value per announced tester set.
            let mut references: BTreeMap<Vec<bool>, Bit> = BTreeMap::new();
            let mut halt = None;
            for j in 1..=*n_rep {
                let mut testers = vec![false; n];
                for (k, t) in tester_probs.iter().enumerate() {
                    testers[k] = session.bernoulli(PartyId::Party(k + 1), *t)?;
                }
                let parities = run_all_buckets(
                    &mut session,
                    n,
                    &buckets,
                    &MC_LABELS,
                    BVariant::Ensemble,
                    &testers,
                )?;
                for (k, p) in parities.iter().enumerate() {
                    session.broadcast(PartyId::Party(k + 1), *p, "C.14.sum");
                }
                for (k, t) in testers.iter().enumerate() {
                    session.broadcast(PartyId::Party(k + 1), Bit(*t), "C.14.tester");
                }
                let f_j = parity(parities.iter().copied());

                // Halt rule 1: if the announced testers cover every pair
                // bucket, every term is forced to zero, so f must be 0.
                let covered = buckets
                    .iter()
                    .all(|(j1, j2, _)| testers[*j1] || testers[*j2]);
                if covered && f_j.is_one() {
                    halt = Some(SessionOutcome::Halted {
                        repetition: j,
                        reason: HaltReason::TesterObservedNonzero,
                    });
                    break;
                }
                // Halt rule 2: repetitions with the same announced tester
                // set compute the same surviving terms, so they must agree.
                match references.get(&testers) {
                    None => {
                        references.insert(testers.clone(), f_j);
                    }
                    Some(expected) if *expected != f_j => {
                        halt = Some(SessionOutcome::Halted {
                            repetition: j,
                            reason: HaltReason::InconsistentRepetition,
                        });
                        break;
                    }
                    Some(_) => {}
                }
            }
            let outcome = halt.unwrap_or(match references.get(&vec![false; n]) {
                Some(value) => SessionOutcome::Value(*value),
                None => SessionOutcome::Inconclusive,
            });
            Ok(session.finish(outcome))
        }
    }
}

/// Run the n-party degree-2 scheme over the given per-party inputs.
pub fn run_multiparty<R: Rng>(
    form: &Degree2Form,
    inputs: &BTreeMap<PartyId, Vec<Bit>>,
    rng: &mut R,
    inner: &MultipartyInner,
) -> Result<SessionResult, ProtocolError> {
    let mut driver = SampledDriver::new(rng);
    execute_multiparty(form, inputs, inner, &mut driver)
}
