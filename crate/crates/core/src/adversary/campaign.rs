//! Cheating campaigns: repeated seeded scheme-C sessions with an active
//! attack, measuring detection statistics.

use rand::Rng;
use serde::Serialize;

use super::{AdversaryError, CheatConfig};
use crate::bits::Bit;
use crate::boolfn::Decomposition;
use crate::protocol::{run_scheme_c, PartyId, SessionOutcome, TesterPolicy};

/// Measured detection statistics for one campaign. Two closed-form
/// candidates for the expected detection time are reported side by side;
/// they disagree, and the empirical mean adjudicates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetectionReport {
    pub trials: usize,
    pub detected: usize,
    /// Mean repetition index at which detection fired, over detected trials.
    pub mean_detection_repetition: f64,
    /// The ratio `(1−t_b)/t_a` (roles swapped for a first-party cheater),
    /// a second closed-form candidate for the mean detection time; only
    /// meaningful for sum-flipping by an input-holding party.
    pub ratio_formula_value: Option<f64>,
    /// `1/p` for the per-repetition detection probability `p` of the
    /// configured cheat, the mean of the implied geometric law.
    pub geometric_formula_value: Option<f64>,
    /// Trials that ran out of repetitions without detection.
    pub undetected: usize,
    /// Trials that completed with a (wrong or right) value.
    pub completed_with_value: usize,
}

/// Per-repetition detection probability for a sum-flipping cheater: the
/// honest side tests while the cheater does not.
fn flip_sum_detection_probability(by: PartyId, policy: &TesterPolicy) -> Option<f64> {
    match by {
        PartyId::Bob => Some(policy.t_a * (1.0 - policy.t_b)),
        PartyId::Alice => Some(policy.t_b * (1.0 - policy.t_a)),
        // The third party never tests; any tester repetition exposes it.
        PartyId::Charlie => Some(1.0 - (1.0 - policy.t_a) * (1.0 - policy.t_b)),
        PartyId::Party(_) => None,
    }
}

fn ratio_formula(by: PartyId, policy: &TesterPolicy) -> Option<f64> {
    match by {
        PartyId::Bob => Some((1.0 - policy.t_b) / policy.t_a),
        PartyId::Alice => Some((1.0 - policy.t_a) / policy.t_b),
        _ => None,
    }
}

/// Run `trials` independent scheme-C sessions with the cheat active and
/// report detection statistics.
pub fn run_cheat_campaign<R: Rng>(
    decomp: &Decomposition,
    x: &[Bit],
    y: &[Bit],
    policy: TesterPolicy,
    cheat: &CheatConfig,
    trials: usize,
    rng: &mut R,
) -> Result<DetectionReport, AdversaryError> {
    if *cheat == CheatConfig::None {
        return Err(AdversaryError::CheatRequired);
    }
    if trials == 0 {
        return Err(AdversaryError::Protocol(
            crate::protocol::ProtocolError::InvalidRepetitionCount,
        ));
    }

    let mut detected = 0usize;
    let mut completed_with_value = 0usize;
    let mut repetition_sum = 0u64;
    for _ in 0..trials {
        let result = run_scheme_c(decomp, x, y, rng, policy, cheat)?;
        match result.outcome {
            SessionOutcome::Halted { repetition, .. } => {
                detected += 1;
                repetition_sum += repetition as u64;
            }
            SessionOutcome::Value(_) => completed_with_value += 1,
            SessionOutcome::Inconclusive => {}
        }
    }

    let (ratio, geometric) = match cheat {
        CheatConfig::FlipSum { by } => (
            ratio_formula(*by, &policy),
            flip_sum_detection_probability(*by, &policy).map(|p| 1.0 / p),
        ),
        _ => (None, None),
    };

    Ok(DetectionReport {
        trials,
        detected,
        mean_detection_repetition: if detected > 0 {
            repetition_sum as f64 / detected as f64
        } else {
            f64::NAN
        },
        ratio_formula_value: ratio,
        geometric_formula_value: geometric,
        undetected: trials - detected,
        completed_with_value,
    })
}
