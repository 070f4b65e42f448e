//! Pauli operators, measurement settings, and outcome bits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::QsimError;
use crate::bits::Bit;

/// Single-qubit Pauli axis.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Overall sign of a Pauli string.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A signed Pauli string over all qubits of a state, e.g. `-IYY`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOp {
    pub sign: Sign,
    pub axes: Vec<PauliAxis>,
}

impl PauliOp {
    pub fn new(sign: Sign, axes: Vec<PauliAxis>) -> Self {
        PauliOp { sign, axes }
    }

    pub fn plus(axes: Vec<PauliAxis>) -> Self {
        PauliOp::new(Sign::Plus, axes)
    }

    /// The string with a single non-identity axis at `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, axis: PauliAxis) -> Self {
        let mut axes = vec![PauliAxis::I; n_qubits];
        axes[qubit] = axis;
        PauliOp::plus(axes)
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn is_all_identity(&self) -> bool {
        self.axes.iter().all(|a| *a == PauliAxis::I)
    }
}

impl FromStr for PauliOp {
    type Err = QsimError;

    /// Parse strings like `"ZZZ"`, `"-XXZ"`, `"+IYY"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
        };
        if rest.is_empty() {
            return Err(QsimError::BadPauliString(s.to_string()));
        }
        let axes = rest
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(PauliAxis::I),
                'X' => Ok(PauliAxis::X),
                'Y' => Ok(PauliAxis::Y),
                'Z' => Ok(PauliAxis::Z),
                _ => Err(QsimError::BadPauliString(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliOp { sign, axes })
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        for axis in &self.axes {
            write!(f, "{axis}")?;
        }
        Ok(())
    }
}

/// A protocol measurement setting: input bit 0 selects Z, input bit 1
/// selects X. No other bases are reachable through this type.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeasurementSetting(pub Bit);

impl MeasurementSetting {
    pub fn basis(self) -> PauliAxis {
        if self.0.is_one() {
            PauliAxis::X
        } else {
            PauliAxis::Z
        }
    }
}

/// A measurement outcome bit; `bit` encodes the eigenvalue `(−1)^bit`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasurementOutcome {
    pub bit: Bit,
}

impl MeasurementOutcome {
    pub fn new(bit: Bit) -> Self {
        MeasurementOutcome { bit }
    }

    pub fn eigenvalue(self) -> i8 {
        self.bit.eigenvalue()
    }
}
