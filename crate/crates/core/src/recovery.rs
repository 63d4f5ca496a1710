//! Recovery of k-sparse signals on Z/p from Fourier values at 2k points.
//!
//! If two signals with at most k non-zero values agree on 2k spectral
//! samples, their difference has at most 2k non-zero values and vanishes at
//! those 2k samples. Its restriction to a 2k-column superset of its support is
//! then in the kernel of a square Fourier minor, which is non-singular for
//! prime p. So the consistent signal is unique, and exhaustive search over
//! candidate supports finds it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycRat, Prime};
use crate::error::{Error, Result};
use crate::fourier_minors::{combinations, IndexSet};
use crate::linalg;
use crate::uncertainty::Signal;

/// Observed values of f̂ at the positions in `samples`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementSet {
    prime: Prime,
    samples: IndexSet,
    values: Vec<CycRat>,
}

impl MeasurementSet {
    pub fn new(samples: IndexSet, values: Vec<CycRat>) -> Result<Self> {
        let prime = samples.prime();
        if values.len() != samples.len() {
            return Err(Error::SizeMismatch(format!(
                "{} samples but {} values",
                samples.len(),
                values.len()
            )));
        }
        values
            .iter()
            .try_for_each(|v| prime.ensure_same(v.prime()))?;
        Ok(MeasurementSet {
            prime,
            samples,
            values,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn samples(&self) -> &IndexSet {
        &self.samples
    }

    pub fn values(&self) -> &[CycRat] {
        &self.values
    }

    /// `{"p": 5, "samples": [0, 1], "values": [[…], […]]}`.
    pub fn from_json(json: &str) -> Result<Self> {
        let raw: RawMeasurements =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let prime = Prime::new(raw.p)?;
        let samples: Vec<i64> = raw.samples.iter().map(|&s| s as i64).collect();
        let samples = IndexSet::new(prime, &samples)?;
        if samples.len() != raw.samples.len() || raw.samples.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("samples must be strictly increasing".into()));
        }
        let values = raw
            .values
            .iter()
            .map(|v| CycRat::from_strings(prime, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(samples, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measurements serialize")
    }
}

#[derive(Serialize, Deserialize)]
struct RawMeasurements {
    p: u64,
    samples: Vec<u64>,
    values: Vec<Vec<String>>,
}

impl Serialize for MeasurementSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        RawMeasurements {
            p: u64::from(self.prime.get()),
            samples: self.samples.elems().iter().map(|&s| u64::from(s)).collect(),
            values: self.values.iter().map(CycRat::to_strings).collect(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryResult {
    pub signal: Signal,
    pub support: IndexSet,
    pub residual_checked: bool,
}

impl Serialize for RecoveryResult {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            p: u32,
            values: Vec<Vec<String>>,
            support: &'a IndexSet,
            residual_checked: bool,
        }
        Raw {
            p: self.signal.prime().get(),
            values: self
                .signal
                .values()
                .iter()
                .map(CycRat::to_strings)
                .collect(),
            support: &self.support,
            residual_checked: self.residual_checked,
        }
        .serialize(serializer)
    }
}

/// `f̂` restricted to `samples`.
pub fn measure(f: &Signal, samples: &IndexSet) -> Result<MeasurementSet> {
    f.prime().ensure_same(samples.prime())?;
    let spectrum = f.dft();
    let values = samples
        .elems()
        .iter()
        .map(|&s| spectrum.values()[s as usize].clone())
        .collect();
    MeasurementSet::new(samples.clone(), values)
}

/// `Σ_{j ∈ support} x_j ω^(s·j)`.
fn spectral_value(prime: Prime, support: &[u32], x: &[CycRat], s: u32) -> CycRat {
    support
        .iter()
        .zip(x)
        .fold(CycRat::zero(prime), |acc, (&j, v)| {
            &acc + &v.mul_omega_pow(i64::from(s) * i64::from(j))
        })
}

/// Solves on the first `|support|` samples and checks the rest.
fn try_support(m: &MeasurementSet, support: &[u32]) -> Option<Result<Signal>> {
    let prime = m.prime;
    let samples = m.samples.elems();
    let k = support.len();
    let x = if k == 0 {
        Vec::new()
    } else {
        let matrix: linalg::Matrix = samples[..k]
            .iter()
            .map(|&s| {
                support
                    .iter()
                    .map(|&j| CycRat::omega_pow(prime, i64::from(s) * i64::from(j)))
                    .collect()
            })
            .collect();
        match linalg::solve(&matrix, &m.values[..k]) {
            Some(x) => x,
            None => {
                return Some(Err(Error::TheoremViolation(format!(
                    "singular minor: p = {prime}, I = {:?}, J = {support:?}",
                    &samples[..k]
                ))))
            }
        }
    };
    let consistent = samples[k..]
        .iter()
        .zip(&m.values[k..])
        .all(|(&s, v)| spectral_value(prime, support, &x, s) == *v);
    if !consistent {
        return None;
    }
    let mut values = vec![CycRat::zero(prime); prime.as_usize()];
    for (&j, v) in support.iter().zip(x) {
        values[j as usize] = v;
    }
    Some(Ok(Signal::new(prime, values).expect("length p")))
}

/// Finds the unique signal with at most `k` non-zero values that matches `m`.
///
/// Candidate supports are tried by size, then lexicographically; the first
/// consistent one is the exact support of the answer. Candidates of one size
/// are checked in parallel on the current rayon pool with first-in-order
/// acceptance, so the result does not depend on the worker count.
pub fn recover(m: &MeasurementSet, k: usize) -> Result<RecoveryResult> {
    let needed = 2 * k;
    if m.samples.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: m.samples.len(),
        });
    }
    let p = m.prime.get();
    for size in 0..=k.min(p as usize) {
        let candidates = combinations(p, size);
        let found = candidates
            .par_iter()
            .find_map_first(|support| try_support(m, support));
        if let Some(signal) = found {
            let signal = signal?;
            return Ok(RecoveryResult {
                support: signal.support(),
                signal,
                residual_checked: true,
            });
        }
    }
    Err(Error::Inconsistent(k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub p: u32,
    pub k: usize,
    pub samples: Vec<u32>,
    pub signals: usize,
    pub pairs_compared: usize,
    pub collisions: usize,
}

pub const AUDIT_MAX_P: u32 = 7;
pub const AUDIT_MAX_K: usize = 2;
pub const AUDIT_MAX_POOL: usize = 3;

/// Enumerates every signal with at most `k` non-zero values drawn from
/// `value_pool` and counts pairs of distinct signals whose measurements on
/// `samples` coincide.
pub fn uniqueness_audit(
    prime: Prime,
    k: usize,
    samples: &IndexSet,
    value_pool: &[CycRat],
) -> Result<AuditReport> {
    if prime.get() > AUDIT_MAX_P || k > AUDIT_MAX_K || value_pool.len() > AUDIT_MAX_POOL {
        return Err(Error::TooLarge(format!(
            "audit is limited to p <= {AUDIT_MAX_P}, k <= {AUDIT_MAX_K}, pool size <= {AUDIT_MAX_POOL}"
        )));
    }
    prime.ensure_same(samples.prime())?;
    if samples.len() < 2 * k {
        return Err(Error::InsufficientSamples {
            needed: 2 * k,
            got: samples.len(),
        });
    }
    let mut pool: Vec<CycRat> = Vec::new();
    for v in value_pool {
        prime.ensure_same(v.prime())?;
        if v.is_zero() {
            return Err(Error::OutOfRange("pool values must be non-zero".into()));
        }
        if !pool.contains(v) {
            pool.push(v.clone());
        }
    }

    let mut signals = Vec::new();
    for size in 0..=k {
        for support in combinations(prime.get(), size) {
            let mut choice = vec![0usize; size];
            loop {
                let mut values = vec![CycRat::zero(prime); prime.as_usize()];
                for (&j, &c) in support.iter().zip(&choice) {
                    values[j as usize] = pool[c].clone();
                }
                signals.push(Signal::new(prime, values)?);
                // odometer over pool choices
                let Some(pos) = (0..size).rev().find(|&i| choice[i] + 1 < pool.len()) else {
                    break;
                };
                choice[pos] += 1;
                choice[pos + 1..].iter_mut().for_each(|c| *c = 0);
            }
        }
    }

    let measurements = signals
        .iter()
        .map(|f| measure(f, samples).map(|m| m.values))
        .collect::<Result<Vec<_>>>()?;
    let n = signals.len();
    let collisions = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| measurements[a] == measurements[b])
        .count();
    Ok(AuditReport {
        p: prime.get(),
        k,
        samples: samples.elems().to_vec(),
        signals: n,
        pairs_compared: n * (n - 1) / 2,
        collisions,
    })
}
