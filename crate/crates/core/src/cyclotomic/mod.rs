//! Exact arithmetic in Z[ω] and Q(ω) for a prime p, with ω a primitive
//! p-th root of unity.
//!
//! Elements are stored in the integral basis `1, ω, …, ω^(p-2)`; the top
//! power is eliminated with `ω^(p-1) = -(1 + ω + … + ω^(p-2))`. Besides the
//! field operations this module carries the reduction map Z[ω] → F_p
//! (ω ↦ 1), whose kernel is the principal ideal `(1 - ω)`, exact division
//! by `1 - ω`, and the `(1 - ω)`-adic valuation.

mod int;
mod prime;
mod rat;

pub use int::CycInt;
pub use prime::Prime;
pub use rat::CycRat;

use serde::{Serialize, Serializer};

/// The `(1 - ω)`-adic valuation; `Infinite` exactly for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("infinite"),
        }
    }
}

/// Serialized as an integer, or the string `"infinite"`.
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u64(*v),
            Valuation::Infinite => serializer.serialize_str("infinite"),
        }
    }
}
