//! Single-bit values with GF(2) arithmetic.
//!
//! Every classical quantity in the protocols (inputs, pads, shared
//! randomness, measurement outcomes, announcements) is a bit, and the
//! schemes only ever combine them with XOR and AND. `Bit` keeps those
//! combinations type-checked and gives a fixed 0/1 rendering for transcripts
//! and reports.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign, Not};

use serde::{Deserialize, Serialize};

/// A classical bit. XOR is addition and AND is multiplication over GF(2).
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(pub bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }

    /// Interpret the bit as a measured eigenvalue: `0 ↦ +1`, `1 ↦ −1`.
    pub fn eigenvalue(self) -> i8 {
        if self.0 {
            -1
        } else {
            1
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Bit {
    fn bitxor_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for Bit {
    type Output = Bit;
    fn bitand(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl Not for Bit {
    type Output = Bit;
    fn not(self) -> Bit {
        Bit(!self.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl fmt::Debug for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for Bit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Bit {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(deserializer)?;
        match v {
            0 => Ok(Bit::ZERO),
            1 => Ok(Bit::ONE),
            other => Err(serde::de::Error::custom(format!(
                "bit must be 0 or 1, got {other}"
            ))),
        }
    }
}

/// XOR of an iterator of bits (the empty XOR is 0).
pub fn parity<I: IntoIterator<Item = Bit>>(bits: I) -> Bit {
    bits.into_iter().fold(Bit::ZERO, |acc, b| acc ^ b)
}

/// Render bits as a compact string like `"0110"`.
pub fn bitstring(bits: &[Bit]) -> String {
    bits.iter().map(|b| char::from(b'0' + b.as_u8())).collect()
}

/// Parse a compact bitstring like `"0110"`.
pub fn parse_bitstring(s: &str) -> Option<Vec<Bit>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(Bit::ZERO),
            '1' => Some(Bit::ONE),
            _ => None,
        })
        .collect()
}
