//! Session bookkeeping: the scheduler that records messages, builds views,
//! and tracks qubit custody.
//!
//! Parties are passive: all sequencing lives here. The scheduler enforces
//! the session invariants: strictly increasing sequence numbers, exactly
//! one recipient on the secure channel, and single-qubit custody (no party
//! ever holds two qubits) during handover rounds.

use std::collections::BTreeMap;

use super::choice::ChoiceDriver;
use super::types::{
    Announcement, Channel, Message, PartyId, PartyView, Payload, Recipient, SessionOutcome,
    SessionResult, Transcript, ViewMessage,
};
use super::ProtocolError;
use crate::bits::Bit;
use crate::qsim::{MeasurementSetting, StateVector};

pub(crate) struct Session<'d> {
    driver: &'d mut dyn ChoiceDriver,
    seq: u64,
    transcript: Transcript,
    views: BTreeMap<PartyId, PartyView>,
    /// Qubit index → current holder, while a GHZ state is live.
    holders: BTreeMap<usize, PartyId>,
}

impl<'d> Session<'d> {
    pub fn new(driver: &'d mut dyn ChoiceDriver, participants: &[PartyId]) -> Self {
        let views = participants
            .iter()
            .map(|p| (*p, PartyView::default()))
            .collect();
        Session {
            driver,
            seq: 0,
            transcript: Transcript::default(),
            views,
            holders: BTreeMap::new(),
        }
    }

    pub fn set_inputs(&mut self, party: PartyId, bits: Vec<Bit>) {
        self.views
            .get_mut(&party)
            .expect("inputs for a participant")
            .local_inputs
            .insert(party, bits);
    }

    /// Draw a fair bit visible to the given owners (one owner for a local
    /// pad, two for a shared random bit).
    pub fn coin(&mut self, owners: &[PartyId]) -> Bit {
        let bit = self.driver.coin();
        for owner in owners {
            self.record_randomness(*owner, bit);
        }
        bit
    }

    /// Draw a biased local decision bit for one party.
    pub fn bernoulli(&mut self, party: PartyId, p: f64) -> Result<bool, ProtocolError> {
        let value = self.driver.bernoulli(p)?;
        self.record_randomness(party, Bit(value));
        Ok(value)
    }

    fn record_randomness(&mut self, party: PartyId, bit: Bit) {
        self.views
            .get_mut(&party)
            .expect("randomness for a participant")
            .local_randomness
            .entry(party)
            .or_default()
            .push(bit);
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    /// Send one bit on the secure classical channel.
    pub fn secure_send(&mut self, from: PartyId, to: PartyId, bit: Bit, step_label: &'static str) {
        let seq = self.next_seq();
        self.transcript.messages.push(Message {
            seq,
            from,
            to: Recipient::Party(to),
            channel: Channel::SecureClassical,
            payload: Payload::Bit(bit),
            step_label,
        });
        self.views
            .get_mut(&to)
            .expect("recipient is a participant")
            .received
            .push(ViewMessage {
                from,
                to,
                bit,
                step_label,
            });
    }

    /// Announce one bit to everybody.
    pub fn broadcast(&mut self, from: PartyId, bit: Bit, step_label: &'static str) {
        let seq = self.next_seq();
        self.transcript.messages.push(Message {
            seq,
            from,
            to: Recipient::Broadcast,
            channel: Channel::Broadcast,
            payload: Payload::Bit(bit),
            step_label,
        });
        let announcement = Announcement {
            party: from,
            bit,
            step_label,
        };
        self.transcript.announcements.push(announcement);
        for view in self.views.values_mut() {
            view.announced.push(announcement);
        }
    }

    /// Hand out the qubits of a fresh GHZ state.
    pub fn assign_qubits(&mut self, assignments: &[(usize, PartyId)]) {
        self.holders = assignments.iter().map(|(q, p)| (*q, *p)).collect();
    }

    /// One simultaneous cyclic permutation of qubits. Every move must send
    /// a qubit its holder actually has, and afterwards every holding party
    /// must again hold exactly one qubit.
    pub fn handover_round(
        &mut self,
        moves: &[(PartyId, PartyId, usize)],
        step_label: &'static str,
    ) {
        for (from, _, qubit) in moves {
            assert_eq!(
                self.holders.get(qubit),
                Some(from),
                "party {from} does not hold qubit {qubit}"
            );
        }
        for (from, to, qubit) in moves {
            let seq = self.next_seq();
            self.transcript.messages.push(Message {
                seq,
                from: *from,
                to: Recipient::Party(*to),
                channel: Channel::QubitHandover,
                payload: Payload::Qubit(*qubit),
                step_label,
            });
            self.holders.insert(*qubit, *to);
        }
        // Single-custody rule: no party ends a round with two qubits.
        let mut counts: BTreeMap<PartyId, usize> = BTreeMap::new();
        for holder in self.holders.values() {
            *counts.entry(*holder).or_default() += 1;
        }
        for (party, count) in counts {
            assert_eq!(
                count, 1,
                "party {party} holds {count} qubits after a handover round"
            );
        }
    }

    pub fn holder_of(&self, qubit: usize) -> Option<PartyId> {
        self.holders.get(&qubit).copied()
    }

    /// Measure a held qubit in the basis selected by a setting bit,
    /// recording the outcome in the measurer's view.
    pub fn measure(
        &mut self,
        party: PartyId,
        qubit: usize,
        state: &StateVector,
        setting: MeasurementSetting,
    ) -> Result<(Bit, StateVector), ProtocolError> {
        assert_eq!(
            self.holders.get(&qubit),
            Some(&party),
            "party {party} measures qubit {qubit} it does not hold"
        );
        let branches = state.measure_pauli_branches(qubit, setting.basis())?;
        let bit = self.driver.branch(branches.prob_plus);
        let collapsed = branches
            .state(bit)
            .expect("driver only takes positive-probability branches")
            .clone();
        self.views
            .get_mut(&party)
            .expect("measurer is a participant")
            .measured
            .entry(party)
            .or_default()
            .push(bit);
        Ok((bit, collapsed))
    }

    pub fn finish(self, outcome: SessionOutcome) -> SessionResult {
        SessionResult {
            outcome,
            transcript: self.transcript,
            views: self.views,
        }
    }
}
