//! Exhaustive branch enumeration: exact session and view distributions.
//!
//! A two-party session's randomness is a bounded sequence of binary choices
//! (shared bits, pads, measurement branches). Walking all of them with
//! their exact probabilities yields the precise distribution over session
//! results, from which per-party view distributions and Bayesian posteriors
//! follow without sampling error.

use std::collections::BTreeMap;

use super::choice::enumerate_leaves;
use super::multiparty::{execute_multiparty, MultipartyInner};
use super::twoparty::{execute_two_party, TwoPartyScheme};
use super::types::{PartyId, PartyView, SessionResult};
use super::ProtocolError;
use crate::bits::Bit;
use crate::boolfn::{Decomposition, Degree2Form};

/// All positive-probability session results with their exact probabilities.
pub type SessionDistribution = Vec<(SessionResult, f64)>;

/// Exact distribution over views, one entry per distinct view.
pub type ViewDistribution = BTreeMap<PartyView, f64>;

/// Enumerate every positive-probability execution of a two-party scheme.
///
/// Guarded at [`super::MAX_BRANCH_LEAVES`] leaves; the probabilities sum to
/// 1 within 1e-9.
pub fn enumerate_sessions(
    scheme: TwoPartyScheme,
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
) -> Result<SessionDistribution, ProtocolError> {
    enumerate_leaves(|driver| execute_two_party(scheme, decomp, x, y, driver))
}

/// Enumerate the n-party scheme with the passively secure inner scheme.
pub fn enumerate_multiparty_sessions(
    form: &Degree2Form,
    inputs: &BTreeMap<PartyId, Vec<Bit>>,
) -> Result<SessionDistribution, ProtocolError> {
    enumerate_leaves(|driver| execute_multiparty(form, inputs, &MultipartyInner::B, driver))
}

/// Collapse a session distribution into each party's view distribution.
pub fn view_distributions(sessions: &SessionDistribution) -> BTreeMap<PartyId, ViewDistribution> {
    let mut out: BTreeMap<PartyId, ViewDistribution> = BTreeMap::new();
    for (result, weight) in sessions {
        for (party, view) in &result.views {
            *out.entry(*party)
                .or_default()
                .entry(view.clone())
                .or_insert(0.0) += weight;
        }
    }
    out
}

/// Exact per-party view distributions for a two-party scheme on fixed
/// inputs.
pub fn enumerate_views(
    scheme: TwoPartyScheme,
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
) -> Result<BTreeMap<PartyId, ViewDistribution>, ProtocolError> {
    let sessions = enumerate_sessions(scheme, decomp, x, y)?;
    Ok(view_distributions(&sessions))
}

/// Total variation distance between two view distributions.
pub fn total_variation(a: &ViewDistribution, b: &ViewDistribution) -> f64 {
    let mut distance = 0.0;
    for (view, pa) in a {
        distance += (pa - b.get(view).copied().unwrap_or(0.0)).abs();
    }
    for (view, pb) in b {
        if !a.contains_key(view) {
            distance += pb;
        }
    }
    distance / 2.0
}
