//! Threshold audit for the n-party scheme: worst-case excess leakage for
//! every coalition of size up to n−1, by exact enumeration.
//!
//! Each pair-bucket term is one padded GHZ round whose randomness is the
//! uniform 16-point space (p_a, p_b, m1, m2), with m3 pinned by the parity
//! law. The audit enumerates the joint space exactly, after two
//! measure-preserving reductions that keep it small:
//!
//! * rounds with no honest participant carry data that is independent of
//!   the honest inputs and of every other round, so they are dropped;
//! * in a round with exactly one honest participant, the honest outcome bit
//!   is determined by the coalition's visible bits plus the term product,
//!   so the round collapses into a deterministic offset on the honest
//!   party's announced parity and its visible bits are dropped.
//!
//! Rounds with two or more honest participants are enumerated in full. The
//! same quantities can be computed from the generic session enumeration
//! ([`crate::protocol::enumerate_multiparty_sessions`]); tests cross-check
//! the two routes.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::posterior::output_entropy_bits;
use super::AdversaryError;
use crate::bits::Bit;
use crate::boolfn::{eval_anf, Degree2Form};
use crate::protocol::{PartyId, ProtocolError, MAX_BRANCH_LEAVES};

/// Leakage summary for one coalition size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoalitionSizeReport {
    pub max_excess_bits: f64,
    pub max_leakage_bits: f64,
    pub ideal_bits_at_max: f64,
    pub worst_coalition: Vec<PartyId>,
}

/// Result of the full audit: worst-case numbers per coalition size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdAudit {
    pub party_count: usize,
    pub per_size: BTreeMap<usize, CoalitionSizeReport>,
}

/// One GHZ round: the three 0-based party indices acting as the two input
/// holders and the measuring third party, with the term polynomials already
/// reduced to bits for fixed full inputs.
struct Round {
    j1: usize,
    j2: usize,
    j3: usize,
    p: Bit,
    q: Bit,
}

/// A round with at least two honest participants, reduced to its joint
/// distribution over (coalition-visible code, honest outcome-bit mask).
struct EnumeratedRound {
    /// Number of bits in the visible code.
    code_bits: u32,
    /// Aggregated entries: (code, honest mask, probability).
    entries: Vec<(u64, u64, f64)>,
}

fn nominate_third(n: usize, j1: usize, j2: usize) -> usize {
    (0..n)
        .find(|j| *j != j1 && *j != j2)
        .expect("at least 3 parties")
}

/// Evaluate all rounds' term bits for one full input assignment.
fn rounds_for_inputs(form: &Degree2Form, inputs: &[Vec<Bit>]) -> Vec<Round> {
    let n = form.party_count();
    let envs: Vec<HashMap<String, Bit>> = (0..n)
        .map(|j| {
            form.party_variables(j)
                .iter()
                .cloned()
                .zip(inputs[j].iter().copied())
                .collect()
        })
        .collect();
    let mut rounds = Vec::new();
    for ((j1, j2), terms) in form.buckets() {
        let j3 = nominate_third(n, *j1, *j2);
        for (poly_hi, poly_lo) in terms {
            rounds.push(Round {
                j1: *j1,
                j2: *j2,
                j3,
                p: eval_anf(poly_hi, &envs[*j1]).expect("declared variables"),
                q: eval_anf(poly_lo, &envs[*j2]).expect("declared variables"),
            });
        }
    }
    rounds
}

/// Exact distribution over the coalition's reduced view for fixed inputs:
/// keys pack the visible codes of enumerated rounds and the honest
/// announced parities.
fn view_distribution(
    rounds: &[Round],
    corrupt: &[bool],
    honest_index: &BTreeMap<usize, usize>,
) -> BTreeMap<u64, f64> {
    let mut offsets: u64 = 0;
    let mut enumerated: Vec<EnumeratedRound> = Vec::new();

    for round in rounds {
        let roles = [round.j1, round.j2, round.j3];
        let honest_roles: Vec<usize> = roles.iter().copied().filter(|j| !corrupt[*j]).collect();
        let product = round.p & round.q;
        match honest_roles.len() {
            0 => {} // Invisible to the analysis: independent of everything.
            1 => {
                // The honest outcome is the parity-law complement of the
                // coalition's two outcomes; only the term product survives
                // as an offset on the honest party's announced parity.
                if product.is_one() {
                    offsets ^= 1 << honest_index[&honest_roles[0]];
                }
            }
            _ => {
                let mut aggregated: BTreeMap<(u64, u64), f64> = BTreeMap::new();
                for leaf in 0..16u32 {
                    let p_a = Bit(leaf & 1 != 0);
                    let p_b = Bit(leaf & 2 != 0);
                    let m1 = Bit(leaf & 4 != 0);
                    let m2 = Bit(leaf & 8 != 0);
                    let m3 = product ^ m1 ^ m2;
                    let sent_a = round.p ^ p_a;
                    let sent_b = round.q ^ p_b;

                    let mut code: u64 = 0;
                    let mut code_bits = 0u32;
                    let push = |bit: Bit, code: &mut u64, code_bits: &mut u32| {
                        *code = (*code << 1) | u64::from(bit.as_u8());
                        *code_bits += 1;
                    };
                    if corrupt[round.j1] {
                        push(p_a, &mut code, &mut code_bits);
                        push(m1, &mut code, &mut code_bits);
                    }
                    if corrupt[round.j2] {
                        push(p_b, &mut code, &mut code_bits);
                        push(m2, &mut code, &mut code_bits);
                    }
                    if corrupt[round.j3] {
                        push(sent_a, &mut code, &mut code_bits);
                        push(sent_b, &mut code, &mut code_bits);
                        push(m3, &mut code, &mut code_bits);
                    }

                    let mut mask: u64 = 0;
                    for (role, outcome) in roles.iter().zip([m1, m2, m3]) {
                        if !corrupt[*role] && outcome.is_one() {
                            mask |= 1 << honest_index[role];
                        }
                    }
                    *aggregated.entry((code, mask)).or_insert(0.0) += 1.0 / 16.0;
                }
                let code_bits = 2 * u32::from(corrupt[round.j1])
                    + 2 * u32::from(corrupt[round.j2])
                    + 3 * u32::from(corrupt[round.j3]);
                enumerated.push(EnumeratedRound {
                    code_bits,
                    entries: aggregated
                        .into_iter()
                        .map(|((code, mask), w)| (code, mask, w))
                        .collect(),
                });
            }
        }
    }

    let honest_count = honest_index.len() as u32;
    let mut dist: BTreeMap<u64, f64> = BTreeMap::new();
    // Depth-first product over the enumerated rounds.
    fn recurse(
        rounds: &[EnumeratedRound],
        key: u64,
        parity: u64,
        weight: f64,
        honest_count: u32,
        dist: &mut BTreeMap<u64, f64>,
    ) {
        match rounds.split_first() {
            None => {
                *dist.entry((key << honest_count) | parity).or_insert(0.0) += weight;
            }
            Some((round, rest)) => {
                for (code, mask, w) in &round.entries {
                    recurse(
                        rest,
                        (key << round.code_bits) | code,
                        parity ^ mask,
                        weight * w,
                        honest_count,
                        dist,
                    );
                }
            }
        }
    }
    recurse(&enumerated, 0, offsets, 1.0, honest_count, &mut dist);
    dist
}

/// Mutual information (bits) between a uniformly distributed candidate
/// index and a view key. Sums run in key order so the result is identical
/// across processes.
fn mutual_information_keys(conditionals: &[BTreeMap<u64, f64>]) -> f64 {
    let k = conditionals.len() as f64;
    let mut marginal: BTreeMap<u64, f64> = BTreeMap::new();
    for dist in conditionals {
        for (key, p) in dist {
            *marginal.entry(*key).or_insert(0.0) += p / k;
        }
    }
    let mut info = 0.0;
    for dist in conditionals {
        for (key, p) in dist {
            if *p > 0.0 {
                info += (p / k) * (p / marginal[key]).log2();
            }
        }
    }
    info.max(0.0)
}

fn assignments(widths: &[usize]) -> Vec<Vec<Vec<Bit>>> {
    let mut out: Vec<Vec<Vec<Bit>>> = vec![Vec::new()];
    for width in widths {
        let mut next = Vec::new();
        for prefix in &out {
            for raw in 0..(1usize << width) {
                let bits: Vec<Bit> = (0..*width)
                    .map(|k| Bit(raw & (1 << (width - 1 - k)) != 0))
                    .collect();
                let mut extended = prefix.clone();
                extended.push(bits);
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

/// Worst-case mutual-information leakage beyond the ideal scenario for
/// every coalition of size at most n−1, maximised over the coalition's own
/// inputs, under a uniform prior on honest inputs.
pub fn threshold_audit(form: &Degree2Form) -> Result<ThresholdAudit, AdversaryError> {
    let n = form.party_count();
    let total_rounds: usize = form.buckets().values().map(Vec::len).sum();
    // Same guard as the generic enumeration: 16 leaves per round.
    if total_rounds > 6 || (1usize << (4 * total_rounds)) > MAX_BRANCH_LEAVES {
        return Err(AdversaryError::Protocol(
            ProtocolError::BranchGuardExceeded {
                limit: MAX_BRANCH_LEAVES,
            },
        ));
    }
    let widths: Vec<usize> = (0..n).map(|j| form.party_variables(j).len()).collect();

    let mut per_size: BTreeMap<usize, CoalitionSizeReport> = BTreeMap::new();
    for subset in 1..(1usize << n) - 1 {
        let corrupt: Vec<bool> = (0..n).map(|j| subset & (1 << j) != 0).collect();
        let size = corrupt.iter().filter(|c| **c).count();
        let honest: Vec<usize> = (0..n).filter(|j| !corrupt[*j]).collect();
        let honest_index: BTreeMap<usize, usize> =
            honest.iter().enumerate().map(|(k, j)| (*j, k)).collect();

        let corrupt_widths: Vec<usize> =
            (0..n).filter(|j| corrupt[*j]).map(|j| widths[j]).collect();
        let honest_widths: Vec<usize> = honest.iter().map(|j| widths[*j]).collect();

        for coalition_inputs in assignments(&corrupt_widths) {
            let candidates = assignments(&honest_widths);
            let prior = vec![1.0 / candidates.len() as f64; candidates.len()];
            let mut conditionals = Vec::with_capacity(candidates.len());
            let mut outputs = Vec::with_capacity(candidates.len());
            for candidate in &candidates {
                let mut full: Vec<Vec<Bit>> = vec![Vec::new(); n];
                let mut ci = coalition_inputs.iter();
                let mut hi = candidate.iter();
                for (j, slot) in full.iter_mut().enumerate() {
                    *slot = if corrupt[j] {
                        ci.next()
                            .expect("coalition assignment covers members")
                            .clone()
                    } else {
                        hi.next().expect("candidate covers honest parties").clone()
                    };
                }
                let rounds = rounds_for_inputs(form, &full);
                conditionals.push(view_distribution(&rounds, &corrupt, &honest_index));
                let slices: Vec<&[Bit]> = full.iter().map(Vec::as_slice).collect();
                outputs.push(form.eval(&slices));
            }
            let leakage = mutual_information_keys(&conditionals);
            let ideal = output_entropy_bits(&prior, &outputs);
            let excess = leakage - ideal;

            let members: Vec<PartyId> = (0..n)
                .filter(|j| corrupt[*j])
                .map(|j| PartyId::Party(j + 1))
                .collect();
            let entry = per_size.entry(size).or_insert(CoalitionSizeReport {
                max_excess_bits: f64::NEG_INFINITY,
                max_leakage_bits: 0.0,
                ideal_bits_at_max: 0.0,
                worst_coalition: members.clone(),
            });
            if excess > entry.max_excess_bits {
                entry.max_excess_bits = excess;
                entry.max_leakage_bits = leakage;
                entry.ideal_bits_at_max = ideal;
                entry.worst_coalition = members;
            }
        }
    }

    Ok(ThresholdAudit {
        party_count: n,
        per_size,
    })
}
