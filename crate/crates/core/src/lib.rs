//! Simulator and security-analysis toolkit for GHZ-state secure multi-party
//! computation.
//!
//! Three parties sharing a Greenberger-Horne-Zeilinger state can evaluate the
//! AND of two bits in shared-secret form: each party measures its qubit in a
//! basis picked by an input bit, and the parity of the three outcome bits
//! equals the product of the inputs. This crate builds complete two-party and
//! n-party computation protocols on top of that correlation and provides the
//! machinery to audit their privacy and cheating-detection claims:
//!
//! * [`qsim`]: exact statevector engine for up to five qubits (GHZ
//!   preparation, Pauli measurement with collapse, Hadamard pads, joint-Pauli
//!   measurement, expectation values).
//! * [`boolfn`]: Boolean function parsing, algebraic normal forms, and the
//!   inner-product / degree-2 decompositions that split a function into
//!   one-bit AND subcomputations.
//! * [`protocol`]: deterministic, seeded executions of the computation
//!   schemes (the parity-reveal scheme A, the Hadamard-padded scheme B in
//!   both qubit-swap and ensemble form, its one-sided variant, the
//!   tester-based scheme C, and the n-party degree-2 scheme), producing full
//!   transcripts and per-party views, plus exact view-distribution
//!   enumeration.
//! * [`adversary`]: Bayesian posterior audits, mutual-information leakage
//!   reports, the pad-detection and EPR attacks, cheating campaigns with
//!   detection statistics, and the n-party threshold audit.
//! * [`cli`]: file-based experiment front end (`ghz-check`, `decompose`,
//!   `run`, `sweep`, `privacy-audit`, `attack`, `epr`).

pub mod adversary;
pub mod bits;
pub mod boolfn;
pub mod cli;
pub mod protocol;
pub mod qsim;

pub use bits::Bit;
