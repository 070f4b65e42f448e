//! Randomness drivers: one protocol implementation, two execution modes.
//!
//! Protocol code never touches an RNG directly; it asks a [`ChoiceDriver`]
//! for fair coins (shared randomness, pads) and for measurement branch
//! selections given the exact branch probability. [`SampledDriver`] answers
//! from a seeded RNG. [`ReplayDriver`] answers from a prescribed prefix and
//! records every choice point, which is what [`enumerate`] uses to walk the
//! whole binary choice tree depth-first, pruning zero-probability branches
//! and weighting each leaf with its exact probability.

use rand::Rng;

use super::ProtocolError;
use crate::bits::Bit;

/// Probability below which a branch is treated as impossible.
pub(crate) const PROB_EPS: f64 = 1e-12;

/// Guard on exhaustive enumeration: at most 2^24 leaves.
pub const MAX_BRANCH_LEAVES: usize = 1 << 24;

pub(crate) trait ChoiceDriver {
    /// A fair random bit.
    fn coin(&mut self) -> Bit;

    /// A measurement branch: returns bit `b` with `P(b=0) = prob_plus`.
    fn branch(&mut self, prob_plus: f64) -> Bit;

    /// A biased decision (tester sampling). Enumeration rejects this:
    /// repetition-based schemes are analysed by sampling campaigns instead.
    fn bernoulli(&mut self, p: f64) -> Result<bool, ProtocolError>;
}

pub(crate) struct SampledDriver<'r, R: Rng> {
    rng: &'r mut R,
}

impl<'r, R: Rng> SampledDriver<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        SampledDriver { rng }
    }
}

impl<R: Rng> ChoiceDriver for SampledDriver<'_, R> {
    fn coin(&mut self) -> Bit {
        Bit(self.rng.random::<bool>())
    }

    fn branch(&mut self, prob_plus: f64) -> Bit {
        Bit(self.rng.random::<f64>() >= prob_plus)
    }

    fn bernoulli(&mut self, p: f64) -> Result<bool, ProtocolError> {
        Ok(self.rng.random::<f64>() < p)
    }
}

/// One recorded choice point of a replayed run.
#[derive(Copy, Clone, Debug)]
pub(crate) struct ChoicePoint {
    pub taken: Bit,
    /// Probability of the branch that was taken.
    pub prob_taken: f64,
    /// Probability of the other branch.
    pub prob_alt: f64,
}

/// Replays a fixed prefix of choices, then extends it with the
/// first positive-probability branch, recording everything.
pub(crate) struct ReplayDriver<'p> {
    prefix: &'p [Bit],
    pub trace: Vec<ChoicePoint>,
}

impl<'p> ReplayDriver<'p> {
    pub fn new(prefix: &'p [Bit]) -> Self {
        ReplayDriver {
            prefix,
            trace: Vec::new(),
        }
    }

    /// Product of the probabilities along the taken path.
    pub fn weight(&self) -> f64 {
        self.trace.iter().map(|c| c.prob_taken).product()
    }

    fn choose(&mut self, prob_plus: f64) -> Bit {
        let pos = self.trace.len();
        let taken = match self.prefix.get(pos) {
            Some(bit) => *bit,
            // Past the prefix: default to the positive-probability branch,
            // preferring outcome 0.
            None => Bit(prob_plus < PROB_EPS),
        };
        let (prob_taken, prob_alt) = if taken.is_one() {
            (1.0 - prob_plus, prob_plus)
        } else {
            (prob_plus, 1.0 - prob_plus)
        };
        self.trace.push(ChoicePoint {
            taken,
            prob_taken,
            prob_alt,
        });
        taken
    }
}

impl ChoiceDriver for ReplayDriver<'_> {
    fn coin(&mut self) -> Bit {
        self.choose(0.5)
    }

    fn branch(&mut self, prob_plus: f64) -> Bit {
        self.choose(prob_plus)
    }

    fn bernoulli(&mut self, _p: f64) -> Result<bool, ProtocolError> {
        Err(ProtocolError::NotEnumerable)
    }
}

/// Exhaustively enumerate every positive-probability execution of `run`.
///
/// `run` must be a pure function of the driver's answers. Returns each
/// leaf's result together with its exact probability; the weights sum to 1
/// up to floating-point rounding.
pub(crate) fn enumerate_leaves<T>(
    mut run: impl FnMut(&mut ReplayDriver) -> Result<T, ProtocolError>,
) -> Result<Vec<(T, f64)>, ProtocolError> {
    let mut leaves = Vec::new();
    let mut stack: Vec<Vec<Bit>> = vec![Vec::new()];
    let mut first = true;
    while let Some(prefix) = stack.pop() {
        let mut driver = ReplayDriver::new(&prefix);
        let result = run(&mut driver)?;
        if first {
            // The protocols branch homogeneously, so the first path
            // predicts the leaf count; bail out before doing 2^24 runs.
            first = false;
            let mut estimate = 1usize;
            for point in &driver.trace {
                if point.prob_alt > PROB_EPS {
                    estimate = estimate.saturating_mul(2);
                }
                if estimate > MAX_BRANCH_LEAVES {
                    return Err(ProtocolError::BranchGuardExceeded {
                        limit: MAX_BRANCH_LEAVES,
                    });
                }
            }
        }
        // Queue the unexplored sibling of every choice made beyond the
        // prefix; the prefix's own choices were queued by earlier runs.
        for pos in prefix.len()..driver.trace.len() {
            let point = driver.trace[pos];
            if point.prob_alt > PROB_EPS {
                let mut alt: Vec<Bit> = driver.trace[..pos].iter().map(|c| c.taken).collect();
                alt.push(!point.taken);
                stack.push(alt);
            }
        }
        leaves.push((result, driver.weight()));
        if leaves.len() > MAX_BRANCH_LEAVES {
            return Err(ProtocolError::BranchGuardExceeded {
                limit: MAX_BRANCH_LEAVES,
            });
        }
    }
    Ok(leaves)
}
