//! Session data: parties, messages, transcripts, views, outcomes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::ProtocolError;
use crate::bits::Bit;

/// A protocol participant: the named roles of the three-party schemes, or a
/// 1-based index in the n-party scheme.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartyId {
    Alice,
    Bob,
    Charlie,
    Party(usize),
}

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartyId::Alice => write!(f, "alice"),
            PartyId::Bob => write!(f, "bob"),
            PartyId::Charlie => write!(f, "charlie"),
            PartyId::Party(j) => write!(f, "p{j}"),
        }
    }
}

impl FromStr for PartyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alice" => Ok(PartyId::Alice),
            "bob" => Ok(PartyId::Bob),
            "charlie" => Ok(PartyId::Charlie),
            other => {
                if let Some(idx) = other.strip_prefix('p') {
                    if let Ok(j) = idx.parse::<usize>() {
                        if j >= 1 {
                            return Ok(PartyId::Party(j));
                        }
                    }
                }
                Err(format!(
                    "unknown party {s:?} (use alice, bob, charlie, or pN)"
                ))
            }
        }
    }
}

impl Serialize for PartyId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PartyId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Message destination.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipient {
    Party(PartyId),
    Broadcast,
}

/// Channel a message travels on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    SecureClassical,
    Broadcast,
    QubitHandover,
}

/// Message payload: a classical bit, or a reference to the GHZ qubit being
/// handed over (its position in the shared state).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Bit(Bit),
    Qubit(usize),
}

/// One transmission in a session.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Message {
    pub seq: u64,
    pub from: PartyId,
    pub to: Recipient,
    pub channel: Channel,
    pub payload: Payload,
    pub step_label: &'static str,
}

/// One public announcement (always a bit).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Announcement {
    pub party: PartyId,
    pub bit: Bit,
    pub step_label: &'static str,
}

/// Ordered record of everything sent during a session.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub messages: Vec<Message>,
    pub announcements: Vec<Announcement>,
}

impl Transcript {
    /// Export as JSON lines, one message per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for message in &self.messages {
            out.push_str(&serde_json::to_string(message).expect("message serializes"));
            out.push('\n');
        }
        out
    }
}

/// Whose knowledge a view represents: one party, or a pooling coalition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViewOwner {
    Party(PartyId),
    Coalition(BTreeSet<PartyId>),
}

impl ViewOwner {
    pub fn members(&self) -> BTreeSet<PartyId> {
        match self {
            ViewOwner::Party(p) => BTreeSet::from([*p]),
            ViewOwner::Coalition(set) => set.clone(),
        }
    }

    pub fn contains(&self, party: PartyId) -> bool {
        match self {
            ViewOwner::Party(p) => *p == party,
            ViewOwner::Coalition(set) => set.contains(&party),
        }
    }
}

/// The classical content of a received message, as seen by its recipient.
///
/// Qubit handovers carry no classical payload and are deliberately absent
/// from views (they appear only in the [`Transcript`]); the sequence number
/// is dropped for the same reason, so views from the qubit-swap and
/// ensemble executions of the padded scheme are directly comparable.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ViewMessage {
    pub from: PartyId,
    pub to: PartyId,
    pub bit: Bit,
    pub step_label: &'static str,
}

/// Everything visible to one party or coalition: own inputs, own random
/// bits, classical messages addressed to a member, own measurement
/// outcomes, and all broadcasts. Per-party data is keyed by the member that
/// observed it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartyView {
    pub local_inputs: BTreeMap<PartyId, Vec<Bit>>,
    pub local_randomness: BTreeMap<PartyId, Vec<Bit>>,
    pub received: Vec<ViewMessage>,
    pub measured: BTreeMap<PartyId, Vec<Bit>>,
    pub announced: Vec<Announcement>,
}

impl PartyView {
    /// Merge the views of several parties into one coalition view. Views
    /// must be passed in a canonical member order; received messages keep
    /// their arrival order within each member; multiplicity matters, since
    /// a repeated masked bit is information.
    pub fn merge<'a, I: IntoIterator<Item = &'a PartyView>>(views: I) -> PartyView {
        let mut merged = PartyView::default();
        for view in views {
            for (k, v) in &view.local_inputs {
                merged.local_inputs.insert(*k, v.clone());
            }
            for (k, v) in &view.local_randomness {
                merged.local_randomness.insert(*k, v.clone());
            }
            merged.received.extend(view.received.iter().copied());
            if merged.announced.is_empty() {
                merged.announced = view.announced.clone();
            }
            for (k, v) in &view.measured {
                merged.measured.insert(*k, v.clone());
            }
        }
        merged
    }
}

/// Why a session halted early.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltReason {
    /// An announced security tester forces output 0, but the computed value
    /// was nonzero.
    TesterObservedNonzero,
    /// The computed value disagrees with an earlier repetition run under
    /// the same tester configuration.
    InconsistentRepetition,
}

/// Final outcome of a session.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionOutcome {
    /// The protocol completed and produced this value.
    Value(Bit),
    /// Cheating was detected and the protocol halted (repetitions are
    /// 1-based).
    Halted {
        repetition: usize,
        reason: HaltReason,
    },
    /// Every repetition ran with an active tester, so no function value was
    /// ever established. Only reachable in tester-based schemes.
    Inconclusive,
}

impl SessionOutcome {
    pub fn value(&self) -> Option<Bit> {
        match self {
            SessionOutcome::Value(b) => Some(*b),
            _ => None,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, SessionOutcome::Halted { .. })
    }
}

/// Complete result of one session.
#[derive(Clone, Debug, PartialEq)]
pub struct SessionResult {
    pub outcome: SessionOutcome,
    pub transcript: Transcript,
    pub views: BTreeMap<PartyId, PartyView>,
}

impl SessionResult {
    pub fn view(&self, party: PartyId) -> &PartyView {
        &self.views[&party]
    }

    /// The pooled view of a set of parties.
    pub fn coalition_view(&self, members: &BTreeSet<PartyId>) -> PartyView {
        PartyView::merge(members.iter().map(|p| &self.views[p]))
    }
}

/// Security-tester configuration for the repetition-based scheme.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct TesterPolicy {
    /// Probability that the first party tests in a repetition.
    pub t_a: f64,
    /// Probability that the second party tests in a repetition.
    pub t_b: f64,
    /// Number of repetitions.
    pub n_rep: usize,
}

impl TesterPolicy {
    pub fn new(t_a: f64, t_b: f64, n_rep: usize) -> Result<Self, ProtocolError> {
        for t in [t_a, t_b] {
            if !(t > 0.0 && t < 0.5) {
                return Err(ProtocolError::InvalidTesterProbability(t));
            }
        }
        if n_rep == 0 {
            return Err(ProtocolError::InvalidRepetitionCount);
        }
        Ok(TesterPolicy { t_a, t_b, n_rep })
    }
}

impl fmt::Display for ViewOwner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViewOwner::Party(p) => write!(f, "{p}"),
            ViewOwner::Coalition(set) => {
                let names: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", names.join(","))
            }
        }
    }
}
