//! Protocol executions: schemes A, B (qubit-swap and ensemble), the
//! one-sided B variant, the tester-based scheme C, and the n-party degree-2
//! scheme.
//!
//! Every session is a deterministic function of (inputs, configuration,
//! randomness source). Sessions record a full [`Transcript`] of every
//! classical bit and qubit handover, and per-party [`PartyView`]s holding
//! exactly what each party saw: its own inputs, its local random bits, the
//! classical messages addressed to it, its measurement outcomes, and all
//! broadcasts. Views are the raw material for the privacy audits in
//! [`crate::adversary`].
//!
//! Randomness goes through a driver abstraction so the same protocol code
//! runs in two modes: seeded sampling for simulation, and exhaustive branch
//! enumeration (with exact probabilities) for the privacy analyses in
//! [`enumerate_views`].

mod choice;
mod enumerate;
mod multiparty;
mod session;
#[cfg(test)]
mod tests;
mod twoparty;
mod types;

pub use choice::MAX_BRANCH_LEAVES;
pub use enumerate::{
    enumerate_multiparty_sessions, enumerate_sessions, enumerate_views, total_variation,
    view_distributions, SessionDistribution, ViewDistribution,
};
pub use multiparty::{run_multiparty, MultipartyInner};
pub use twoparty::{
    run_scheme_a, run_scheme_b, run_scheme_b_one_sided, run_scheme_c, BVariant, TwoPartyScheme,
};
pub use types::{
    Announcement, Channel, HaltReason, Message, PartyId, PartyView, Payload, Recipient,
    SessionOutcome, SessionResult, TesterPolicy, Transcript, ViewMessage, ViewOwner,
};

use thiserror::Error;

/// Errors from protocol execution and enumeration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("input for {party} has {got} bits, expected {expected}")]
    ArityMismatch {
        party: String,
        got: usize,
        expected: usize,
    },
    #[error("inputs missing for party {0}")]
    MissingInputs(String),
    #[error("tester probability {0} outside the open interval (0, 0.5)")]
    InvalidTesterProbability(f64),
    #[error("repetition count must be at least 1")]
    InvalidRepetitionCount,
    #[error("tester probabilities must be given for all {expected} parties, got {got}")]
    TesterProbabilityCount { expected: usize, got: usize },
    #[error("branch enumeration exceeds the guard of {limit} leaves")]
    BranchGuardExceeded { limit: usize },
    #[error("scheme uses biased randomness and cannot be branch-enumerated")]
    NotEnumerable,
    #[error(transparent)]
    Qsim(#[from] crate::qsim::QsimError),
}
