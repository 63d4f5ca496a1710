use serde::{Serialize, Serializer};

use crate::cyclotomic::Prime;
use crate::error::{Error, Result};

/// Strictly increasing subset of `{0, …, p-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    prime: Prime,
    elems: Vec<u32>,
}

impl IndexSet {
    /// Accepts indices in any order; rejects duplicates and out-of-range values.
    pub fn new(prime: Prime, elems: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(elems.len());
        for &e in elems {
            if e < 0 || e >= i64::from(prime.get()) {
                return Err(Error::IndexOutOfRange {
                    index: e,
                    p: prime.get(),
                });
            }
            out.push(e as u32);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange(format!("duplicate index {}", w[0])));
        }
        Ok(IndexSet { prime, elems: out })
    }

    /// Caller guarantees `elems` is strictly increasing and below p.
    pub(crate) fn from_sorted(prime: Prime, elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elems.iter().all(|&e| e < prime.get()));
        IndexSet { prime, elems }
    }

    pub fn empty(prime: Prime) -> Self {
        IndexSet {
            prime,
            elems: Vec::new(),
        }
    }

    /// `{start, …, end-1}`.
    pub fn range(prime: Prime, start: u32, end: u32) -> Result<Self> {
        let elems: Vec<i64> = (start..end).map(i64::from).collect();
        Self::new(prime, &elems)
    }

    /// Parses a comma-separated list such as `0,2,3`; the empty string is the empty set.
    pub fn parse(prime: Prime, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty(prime));
        }
        let elems = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad index {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(prime, &elems)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.elems.binary_search(&i).is_ok()
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(serializer)
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > n as usize {
        return out;
    }
    let mut current: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - (k - i) as u32) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn sorts_and_validates() {
        let s = IndexSet::new(prime(5), &[3, 0, 2]).unwrap();
        assert_eq!(s.elems(), &[0, 2, 3]);
        assert!(matches!(
            IndexSet::new(prime(5), &[5]),
            Err(Error::IndexOutOfRange { index: 5, p: 5 })
        ));
        assert!(IndexSet::new(prime(5), &[-1]).is_err());
        assert!(matches!(
            IndexSet::new(prime(5), &[1, 1]),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn parses_lists() {
        assert_eq!(
            IndexSet::parse(prime(7), " 4, 1 ").unwrap().elems(),
            &[1, 4]
        );
        assert!(IndexSet::parse(prime(7), "").unwrap().is_empty());
        assert!(matches!(
            IndexSet::parse(prime(7), "1,x"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 0), vec![Vec::<u32>::new()]);
        assert_eq!(combinations(3, 4).len(), 0);
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
