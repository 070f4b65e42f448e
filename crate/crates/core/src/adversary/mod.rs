//! Adversary machinery: leakage quantification and attacks.
//!
//! Privacy is measured the way the ideal scenario defines it: a coalition
//! should learn nothing about honest inputs beyond what the function value
//! (and its own inputs) already reveal. [`posterior_from_view`] computes
//! exact Bayesian posteriors over honest inputs by branch enumeration and
//! reports mutual-information leakage against the ideal baseline.
//!
//! The attack side mounts what the security analyses describe: pooling
//! coalitions, the Y⊗Y pad-detection measurement, the EPR polling attack on
//! the one-sided scheme, sum-flipping / fake-pad / tester-lie campaigns
//! against the repetition scheme, and the n-party threshold audit.

#[cfg(test)]
mod tests;

mod attacks;
mod campaign;
mod posterior;
mod threshold;

pub use attacks::{
    epr_attack, pad_detection_attack, pad_detection_single_qubit_guess, AttackResult,
};
pub use campaign::{run_cheat_campaign, DetectionReport};
pub use posterior::{
    ideal_leakage_bits, mutual_information_bits, output_entropy_bits, posterior_from_view,
    InputAssignment, PosteriorReport, Prior,
};
pub use threshold::{threshold_audit, ThresholdAudit};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::protocol::PartyId;

/// A set of passively colluding parties. With `may_exchange_quantum` the
/// coalition may also pool qubits, which is exactly what the no-quantum-
/// cheating-channel model forbids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalition {
    pub members: BTreeSet<PartyId>,
    pub may_exchange_quantum: bool,
}

impl Coalition {
    /// A classical-only coalition of the given members.
    pub fn classical<I: IntoIterator<Item = PartyId>>(members: I) -> Result<Self, AdversaryError> {
        let members: BTreeSet<PartyId> = members.into_iter().collect();
        if members.is_empty() {
            return Err(AdversaryError::EmptyCoalition);
        }
        Ok(Coalition {
            members,
            may_exchange_quantum: false,
        })
    }

    pub fn contains(&self, party: PartyId) -> bool {
        self.members.contains(&party)
    }
}

/// How a tester-status liar misbehaves.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TesterLieMode {
    /// Zeroes inputs without announcing it.
    SilentTester,
    /// Announces testing without zeroing.
    FalseClaim,
}

/// Declarative description of an attack on the repetition scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheatConfig {
    /// Everyone follows the protocol.
    None,
    /// Flip the pad-masked polynomial bit sent to the third party.
    FakePad { by: PartyId },
    /// Announce the complement of the summed measurement bits.
    FlipSum { by: PartyId },
    /// Lie about acting as a security tester.
    TesterLie { by: PartyId, mode: TesterLieMode },
}

impl CheatConfig {
    pub fn cheater(&self) -> Option<PartyId> {
        match self {
            CheatConfig::None => None,
            CheatConfig::FakePad { by }
            | CheatConfig::FlipSum { by }
            | CheatConfig::TesterLie { by, .. } => Some(*by),
        }
    }

    /// The cheating party must participate; pad and tester lies only make
    /// sense for the input-holding parties.
    pub fn check_party(
        &self,
        participants: &[PartyId],
    ) -> Result<(), crate::protocol::ProtocolError> {
        let valid = match self {
            CheatConfig::None => true,
            CheatConfig::FlipSum { by } => participants.contains(by),
            CheatConfig::FakePad { by } | CheatConfig::TesterLie { by, .. } => {
                matches!(by, PartyId::Alice | PartyId::Bob) && participants.contains(by)
            }
        };
        if valid {
            Ok(())
        } else {
            Err(crate::protocol::ProtocolError::MissingInputs(format!(
                "cheater {:?} is not a valid participant for this attack",
                self.cheater()
            )))
        }
    }
}

/// Errors from adversary operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdversaryError {
    #[error("coalition must have at least one member")]
    EmptyCoalition,
    #[error("coalition of size {size} leaves no honest party among {parties} participants")]
    NoHonestParty { size: usize, parties: usize },
    #[error("observed view has probability 0 under every candidate input; view and configuration do not match")]
    InconsistentView,
    #[error("attacker holds {held} qubit(s); the joint pad measurement needs the padded qubit plus one other")]
    AttackUnavailable { held: usize },
    #[error("prior must cover every candidate assignment with nonnegative mass summing to 1")]
    InvalidPrior,
    #[error("campaigns need an active cheat configuration")]
    CheatRequired,
    #[error("coalitions pooling quantum state are analysed by the explicit attacks, not view enumeration")]
    QuantumPoolingNotAuditable,
    #[error(transparent)]
    Protocol(#[from] crate::protocol::ProtocolError),
    #[error(transparent)]
    Qsim(#[from] crate::qsim::QsimError),
}
