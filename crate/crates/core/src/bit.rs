use std::fmt;
use std::ops::{BitAnd, BitXor, Not};

use serde::{Deserialize, Serialize};

use crate::Error;

/// A classical bit. Serialized as the integer `0` or `1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub const fn new(value: bool) -> Self {
        Bit(value)
    }

    pub const fn as_bool(self) -> bool {
        self.0
    }

    pub const fn as_u8(self) -> u8 {
        self.0 as u8
    }

    pub const fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// `(-1)^r`, the eigenvalue associated with this outcome bit.
    pub fn sign(self) -> f64 {
        if self.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Inverse of [`Bit::sign`].
    pub fn from_sign(sign: i8) -> Result<Self, Error> {
        match sign {
            1 => Ok(Bit::ZERO),
            -1 => Ok(Bit::ONE),
            other => Err(Error::InvalidBit(other as i64)),
        }
    }

    pub fn both() -> [Bit; 2] {
        [Bit::ZERO, Bit::ONE]
    }
}

impl From<bool> for Bit {
    fn from(value: bool) -> Self {
        Bit(value)
    }
}

impl From<Bit> for u8 {
    fn from(bit: Bit) -> Self {
        bit.as_u8()
    }
}

impl From<Bit> for bool {
    fn from(bit: Bit) -> Self {
        bit.0
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self, Error> {
        match value {
            0 => Ok(Bit::ZERO),
            1 => Ok(Bit::ONE),
            other => Err(Error::InvalidBit(other as i64)),
        }
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
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

/// Bits of `index` as a tuple of `len` bits, most significant first.
pub(crate) fn index_to_bits(index: usize, len: usize) -> Vec<Bit> {
    (0..len)
        .map(|k| Bit::new((index >> (len - 1 - k)) & 1 == 1))
        .collect()
}

/// Inverse of [`index_to_bits`].
pub(crate) fn bits_to_index(bits: &[Bit]) -> usize {
    bits.iter().fold(0, |acc, b| (acc << 1) | b.as_usize())
}

pub(crate) fn parity(bits: &[Bit]) -> Bit {
    bits.iter().fold(Bit::ZERO, |acc, &b| acc ^ b)
}
