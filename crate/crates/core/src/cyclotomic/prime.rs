use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A verified prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    /// Checks primality by trial division; anything outside `u32` is rejected.
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Dimension of Q(ω) over Q, i.e. `p - 1`.
    pub fn degree(self) -> usize {
        self.0 as usize - 1
    }

    /// Reduces a signed exponent into `0..p`.
    pub fn reduce_exponent(self, e: i64) -> usize {
        e.rem_euclid(i64::from(self.0)) as usize
    }

    pub(crate) fn ensure_same(self, other: Prime) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MismatchedPrimes(self.0, other.0))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.0)
    }
}
