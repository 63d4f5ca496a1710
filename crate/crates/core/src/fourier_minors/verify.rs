use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{combinations, FourierMinor, IndexSet};
use crate::cyclotomic::Prime;
use crate::error::{Error, Result};

/// Largest p verified without an explicit override.
pub const VERIFY_MAX_P: u32 = 13;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub pairs_checked: u64,
    pub all_nonzero: bool,
    pub elapsed_ms: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Only check minors of this size.
    pub size: Option<usize>,
    pub jobs: usize,
    /// Permit p above [`VERIFY_MAX_P`].
    pub allow_large: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            size: None,
            jobs: 1,
            allow_large: false,
        }
    }
}

/// Checks every square minor of the p×p Fourier matrix.
///
/// Pairs `(I, J)` are visited by size, then lexicographically in `I`, then
/// `J`. Work is split across `jobs` threads; the report, apart from
/// `elapsed_ms`, does not depend on the worker count, and the counterexample
/// (if any) is the first in visiting order.
pub fn verify_all_minors(prime: Prime, options: VerifyOptions) -> Result<VerificationReport> {
    if prime.get() > VERIFY_MAX_P && !options.allow_large {
        return Err(Error::TooLarge(format!(
            "p = {prime} exceeds {VERIFY_MAX_P}; pass the override to enumerate anyway"
        )));
    }
    if options.jobs == 0 {
        return Err(Error::OutOfRange("jobs must be at least 1".into()));
    }
    let p = prime.as_usize();
    let sizes: Vec<usize> = match options.size {
        Some(m) if m == 0 || m > p => {
            return Err(Error::OutOfRange(format!("size {m} not in 1..={p}")))
        }
        Some(m) => vec![m],
        None => (1..=p).collect(),
    };

    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::OutOfRange(format!("cannot start {} workers: {e}", options.jobs)))?;

    let mut pairs_checked = 0u64;
    let mut counterexample = None;
    for m in sizes {
        let subsets = combinations(prime.get(), m);
        let n = subsets.len();
        pairs_checked += (n * n) as u64;
        let first_bad = pool.install(|| {
            (0..n * n).into_par_iter().find_first(|&idx| {
                let rows = IndexSet::from_sorted(prime, subsets[idx / n].clone());
                let cols = IndexSet::from_sorted(prime, subsets[idx % n].clone());
                !FourierMinor::build(prime, &rows, &cols)
                    .expect("equal non-empty sizes")
                    .is_nonzero_minor()
            })
        });
        if counterexample.is_none() {
            counterexample = first_bad.map(|idx| Counterexample {
                rows: subsets[idx / n].clone(),
                cols: subsets[idx % n].clone(),
            });
        }
    }

    Ok(VerificationReport {
        p: prime.get(),
        pairs_checked,
        all_nonzero: counterexample.is_none(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        counterexample,
    })
}
