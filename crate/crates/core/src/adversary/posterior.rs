//! Exact Bayesian posteriors and mutual-information leakage, by brute-force
//! branch enumeration. Nothing here is sampled.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::Serialize;

use super::{AdversaryError, Coalition};
use crate::bits::{bitstring, Bit};
use crate::boolfn::Decomposition;
use crate::protocol::{enumerate_sessions, PartyId, PartyView, TwoPartyScheme, ViewDistribution};

/// Assignment of input bits to some of the input-holding parties.
pub type InputAssignment = BTreeMap<PartyId, Vec<Bit>>;

/// Prior over honest-party inputs.
#[derive(Clone, Debug, PartialEq)]
pub enum Prior {
    Uniform,
    Explicit(BTreeMap<InputAssignment, f64>),
}

impl Prior {
    fn weights(&self, candidates: &[InputAssignment]) -> Result<Vec<f64>, AdversaryError> {
        match self {
            Prior::Uniform => Ok(vec![1.0 / candidates.len() as f64; candidates.len()]),
            Prior::Explicit(map) => {
                let mut weights = Vec::with_capacity(candidates.len());
                let mut total = 0.0;
                for candidate in candidates {
                    let w = *map.get(candidate).ok_or(AdversaryError::InvalidPrior)?;
                    if w < 0.0 {
                        return Err(AdversaryError::InvalidPrior);
                    }
                    total += w;
                    weights.push(w);
                }
                if (total - 1.0).abs() > 1e-9 {
                    return Err(AdversaryError::InvalidPrior);
                }
                Ok(weights)
            }
        }
    }
}

/// A distribution over input assignments, serialized as
/// `[{"inputs": {"alice": "01"}, "probability": 0.5}, …]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AssignmentDistribution(pub BTreeMap<InputAssignment, f64>);

impl Serialize for AssignmentDistribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            inputs: BTreeMap<String, String>,
            probability: f64,
        }
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (assignment, probability) in &self.0 {
            seq.serialize_element(&Entry {
                inputs: assignment
                    .iter()
                    .map(|(p, bits)| (p.to_string(), bitstring(bits)))
                    .collect(),
                probability: *probability,
            })?;
        }
        seq.end()
    }
}

/// Result of a posterior audit: what the coalition's view says about the
/// honest inputs, and how much information it carries beyond the ideal
/// scenario (a view containing only the function output).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PosteriorReport {
    pub prior: AssignmentDistribution,
    pub posterior: AssignmentDistribution,
    /// Mutual information (bits) between honest inputs and coalition view.
    pub leakage_bits: f64,
    /// Mutual information between honest inputs and the ideal-scenario view.
    pub ideal_leakage_bits: f64,
}

impl PosteriorReport {
    pub fn excess_leakage_bits(&self) -> f64 {
        self.leakage_bits - self.ideal_leakage_bits
    }

    /// Candidates with nonzero posterior mass.
    pub fn support(&self) -> Vec<&InputAssignment> {
        self.posterior
            .0
            .iter()
            .filter(|(_, p)| **p > 1e-12)
            .map(|(a, _)| a)
            .collect()
    }
}

/// All bit-vector assignments for the given parties and widths.
fn all_assignments(parties: &[(PartyId, usize)]) -> Vec<InputAssignment> {
    let mut out = vec![InputAssignment::new()];
    for (party, width) in parties {
        let mut next = Vec::with_capacity(out.len() << width);
        for assignment in &out {
            for raw in 0..(1usize << width) {
                let bits: Vec<Bit> = (0..*width)
                    .map(|k| Bit(raw & (1 << (width - 1 - k)) != 0))
                    .collect();
                let mut extended = assignment.clone();
                extended.insert(*party, bits);
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

/// Mutual information in bits between a candidate index distributed by
/// `prior` and a view drawn from the matching conditional distribution.
pub fn mutual_information_bits(prior: &[f64], conditionals: &[ViewDistribution]) -> f64 {
    let mut marginal: BTreeMap<&PartyView, f64> = BTreeMap::new();
    for (pi, dist) in prior.iter().zip(conditionals) {
        for (view, p) in dist {
            *marginal.entry(view).or_insert(0.0) += pi * p;
        }
    }
    let mut info = 0.0;
    for (pi, dist) in prior.iter().zip(conditionals) {
        if *pi == 0.0 {
            continue;
        }
        for (view, p) in dist {
            if *p > 0.0 {
                info += pi * p * (p / marginal[view]).log2();
            }
        }
    }
    info.max(0.0)
}

/// Entropy (bits) of the function output under the prior: the information
/// an ideal-scenario view reveals about the honest inputs.
pub fn output_entropy_bits(prior: &[f64], outputs: &[Bit]) -> f64 {
    let p_one: f64 = prior
        .iter()
        .zip(outputs)
        .filter(|(_, b)| b.is_one())
        .map(|(p, _)| p)
        .sum();
    binary_entropy(p_one)
}

fn binary_entropy(p: f64) -> f64 {
    let mut h = 0.0;
    for q in [p, 1.0 - p] {
        if q > 0.0 {
            h -= q * q.log2();
        }
    }
    h
}

/// Leakage of the ideal scenario itself, for a coalition with fixed inputs.
pub fn ideal_leakage_bits(
    decomp: &Decomposition,
    coalition_inputs: &InputAssignment,
    candidates: &[InputAssignment],
    prior: &[f64],
) -> f64 {
    let outputs: Vec<Bit> = candidates
        .iter()
        .map(|candidate| {
            let (x, y) = full_inputs(decomp, candidate, coalition_inputs);
            decomp.eval(&x, &y)
        })
        .collect();
    output_entropy_bits(prior, &outputs)
}

/// Assemble the full (x, y) inputs from honest-candidate and coalition
/// parts.
fn full_inputs(
    decomp: &Decomposition,
    candidate: &InputAssignment,
    coalition_inputs: &InputAssignment,
) -> (Vec<Bit>, Vec<Bit>) {
    let pick = |party: PartyId, width: usize| -> Vec<Bit> {
        candidate
            .get(&party)
            .or_else(|| coalition_inputs.get(&party))
            .cloned()
            .unwrap_or_else(|| vec![Bit::ZERO; width])
    };
    (
        pick(PartyId::Alice, decomp.alice_variables().len()),
        pick(PartyId::Bob, decomp.bob_variables().len()),
    )
}

/// Brute-force Bayes over the honest inputs of a two-party scheme.
///
/// For every candidate honest input, the exact probability of the observed
/// coalition view is computed by full branch enumeration; the posterior is
/// the normalized prior-weighted likelihood. The report also carries the
/// mutual-information leakage of the scheme's view against the
/// ideal-scenario baseline.
pub fn posterior_from_view(
    scheme: TwoPartyScheme,
    decomp: &Decomposition,
    coalition: &Coalition,
    observed: &PartyView,
    prior: &Prior,
) -> Result<PosteriorReport, AdversaryError> {
    if coalition.may_exchange_quantum {
        // Quantum pooling breaks the view model itself (joint measurements
        // are not classical data); the EPR and pad-detection attacks cover
        // that regime.
        return Err(AdversaryError::QuantumPoolingNotAuditable);
    }
    let participants = [PartyId::Alice, PartyId::Bob, PartyId::Charlie];
    if coalition.members.iter().any(|m| !participants.contains(m)) {
        return Err(AdversaryError::Protocol(
            crate::protocol::ProtocolError::MissingInputs(format!(
                "coalition member outside this scheme's participants: {:?}",
                coalition.members
            )),
        ));
    }
    if coalition.members.len() >= participants.len() {
        return Err(AdversaryError::NoHonestParty {
            size: coalition.members.len(),
            parties: participants.len(),
        });
    }

    // Honest input-holding parties, in order.
    let mut honest: Vec<(PartyId, usize)> = Vec::new();
    let mut coalition_inputs = InputAssignment::new();
    for (party, width) in [
        (PartyId::Alice, decomp.alice_variables().len()),
        (PartyId::Bob, decomp.bob_variables().len()),
    ] {
        if coalition.contains(party) {
            let bits = observed
                .local_inputs
                .get(&party)
                .ok_or(AdversaryError::InconsistentView)?;
            coalition_inputs.insert(party, bits.clone());
        } else {
            honest.push((party, width));
        }
    }
    let candidates = all_assignments(&honest);
    let prior_weights = prior.weights(&candidates)?;

    // Exact view distribution for every candidate.
    let mut conditionals: Vec<ViewDistribution> = Vec::with_capacity(candidates.len());
    for candidate in &candidates {
        let (x, y) = full_inputs(decomp, candidate, &coalition_inputs);
        let sessions = enumerate_sessions(scheme, decomp, &x, &y)?;
        let mut dist = ViewDistribution::new();
        for (result, weight) in &sessions {
            let view = result.coalition_view(&coalition.members);
            *dist.entry(view).or_insert(0.0) += weight;
        }
        conditionals.push(dist);
    }

    // Posterior over candidates given the observed view.
    let mut posterior: Vec<f64> = candidates
        .iter()
        .zip(&conditionals)
        .zip(&prior_weights)
        .map(|((_, dist), pi)| pi * dist.get(observed).copied().unwrap_or(0.0))
        .collect();
    let total: f64 = posterior.iter().sum();
    if total < 1e-15 {
        return Err(AdversaryError::InconsistentView);
    }
    for p in &mut posterior {
        *p /= total;
    }

    let leakage_bits = mutual_information_bits(&prior_weights, &conditionals);
    let ideal = ideal_leakage_bits(decomp, &coalition_inputs, &candidates, &prior_weights);

    Ok(PosteriorReport {
        prior: AssignmentDistribution(
            candidates
                .iter()
                .cloned()
                .zip(prior_weights.iter().copied())
                .collect(),
        ),
        posterior: AssignmentDistribution(candidates.into_iter().zip(posterior).collect()),
        leakage_bits,
        ideal_leakage_bits: ideal,
    })
}
