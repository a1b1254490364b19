//! The two-element Boolean ring B₂ = {0, 1} with XOR as sum and AND as
//! product, plus the parity function and mod-2 summation.

use std::fmt;
use std::ops::{BitAnd, BitXor};

use num_bigint::BigUint;

/// An element of B₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Bit {
    #[default]
    Zero,
    One,
}

impl Bit {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }

    pub fn as_bool(self) -> bool {
        self == Bit::One
    }

    pub fn is_one(self) -> bool {
        self.as_bool()
    }

    pub fn is_zero(self) -> bool {
        !self.as_bool()
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit::from_bool(b)
    }
}

impl BitXor for Bit {
    type Output = Bit;
    fn bitxor(self, rhs: Bit) -> Bit {
        Bit::from_bool(self != rhs)
    }
}

impl BitAnd for Bit {
    type Output = Bit;
    fn bitand(self, rhs: Bit) -> Bit {
        Bit::from_bool(self.as_bool() && rhs.as_bool())
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_one() { "1" } else { "0" })
    }
}

/// Parity of an arbitrary-precision count: 1 iff `n` is odd.
pub fn parity(n: &BigUint) -> Bit {
    Bit::from_bool(n.bit(0))
}

/// Parity of a machine-word count.
pub fn parity_usize(n: usize) -> Bit {
    Bit::from_bool(n % 2 == 1)
}

/// Returns `(parity(m + n), parity(m) ^ parity(n))`; the two components are
/// always equal.
pub fn parity_additivity_check(m: &BigUint, n: &BigUint) -> (Bit, Bit) {
    (parity(&(m + n)), parity(m) ^ parity(n))
}

/// XOR of a finite sequence of bits. The empty sequence counts as even and
/// yields 0.
pub fn mod2_sum<I: IntoIterator<Item = Bit>>(bits: I) -> Bit {
    bits.into_iter().fold(Bit::Zero, |acc, b| acc ^ b)
}
