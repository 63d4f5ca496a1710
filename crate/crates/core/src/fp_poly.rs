//! Dense polynomials over F_p and the root-multiplicity bound: a non-zero
//! polynomial of degree below p vanishes at a non-zero point to order
//! strictly less than its number of non-zero coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::cyclotomic::{CycInt, Prime};
use crate::error::{Error, Lemma2Precondition, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    prime: Prime,
    value: u64,
}

impl FpScalar {
    pub fn new(prime: Prime, value: i64) -> Self {
        FpScalar {
            prime,
            value: value.rem_euclid(i64::from(prime.get())) as u64,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

/// Polynomial over F_p; `coeffs[k]` is the coefficient of `x^k`, trailing
/// zeros trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    prime: Prime,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn zero(prime: Prime) -> Self {
        FpPoly {
            prime,
            coeffs: Vec::new(),
        }
    }

    /// Reduces every coefficient mod p and trims.
    pub fn new(prime: Prime, coeffs: &[i64]) -> Self {
        let p = i64::from(prime.get());
        Self::from_residues(
            prime,
            coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect(),
        )
    }

    fn from_residues(prime: Prime, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { prime, coeffs }
    }

    pub fn monomial(prime: Prime, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        FpPoly { prime, coeffs }
    }

    /// Applies the reduction map Z[ω] → F_p to each coefficient of
    /// `Σ terms[k] x^k`.
    pub fn reduce_cyclotomic(prime: Prime, terms: &[CycInt]) -> Self {
        Self::from_residues(
            prime,
            terms
                .iter()
                .map(CycInt::reduce_mod_one_minus_omega)
                .collect(),
        )
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FpScalar {
        FpScalar {
            prime: self.prime,
            value: self.coeffs.get(k).copied().unwrap_or(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn p(&self) -> u64 {
        u64::from(self.prime.get())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, a: FpScalar) -> FpScalar {
        let p = self.p();
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * a.value + c) % p);
        FpScalar {
            prime: self.prime,
            value,
        }
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % p) * c % p)
            .collect();
        Self::from_residues(self.prime, coeffs)
    }

    /// Synthetic division: `self = (x - a) · quotient + remainder`.
    pub fn divide_by_linear(&self, a: FpScalar) -> Result<(FpPoly, FpScalar)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.p();
        let n = self.coeffs.len();
        let mut quotient = vec![0u64; n - 1];
        let mut carry = 0u64;
        for k in (0..n).rev() {
            let value = (self.coeffs[k] + carry * a.value) % p;
            if k == 0 {
                let remainder = FpScalar {
                    prime: self.prime,
                    value,
                };
                return Ok((Self::from_residues(self.prime, quotient), remainder));
            }
            quotient[k - 1] = value;
            carry = value;
        }
        unreachable!("loop returns at k = 0")
    }

    /// Largest m with `(x - a)^m | self`, by repeated synthetic division.
    pub fn root_multiplicity(&self, a: FpScalar) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut current = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = current.divide_by_linear(a)?;
            if !r.is_zero() {
                return Ok(m);
            }
            m += 1;
            current = q;
        }
    }

    pub fn nonzero_coeff_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Checks the multiplicity bound at a non-zero point.
    ///
    /// Returns `TheoremViolation` if the bound fails; it cannot under the
    /// preconditions.
    pub fn lemma2_holds(&self, a: FpScalar) -> Result<Lemma2Witness> {
        let degree = self.degree().ok_or(Error::PreconditionViolated(
            Lemma2Precondition::ZeroPolynomial,
        ))?;
        if degree >= self.prime.as_usize() {
            return Err(Error::PreconditionViolated(
                Lemma2Precondition::DegreeTooLarge,
            ));
        }
        if a.is_zero() {
            return Err(Error::PreconditionViolated(Lemma2Precondition::ZeroRoot));
        }
        let multiplicity = self.root_multiplicity(a)?;
        let count = self.nonzero_coeff_count();
        if multiplicity >= count {
            return Err(Error::TheoremViolation(format!(
                "p = {}, g = {:?}, a = {}: multiplicity {multiplicity} >= {count} non-zero coefficients",
                self.prime, self.coeffs, a.value
            )));
        }
        Ok(Lemma2Witness {
            multiplicity,
            nonzero_coeffs: count,
            holds: true,
        })
    }

    /// Loads the JSON array form, reducing mod p.
    pub fn from_json(prime: Prime, json: &str) -> Result<Self> {
        let coeffs: Vec<i64> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self::new(prime, &coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("integer array serializes")
    }

    fn zip_with(&self, other: &FpPoly, f: impl Fn(u64, u64) -> u64) -> FpPoly {
        self.prime
            .ensure_same(other.prime)
            .expect("operands share a prime");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f(self.coeff(k).value, other.coeff(k).value))
            .collect();
        Self::from_residues(self.prime, coeffs)
    }
}

/// Evidence returned by [`FpPoly::lemma2_holds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma2Witness {
    pub multiplicity: usize,
    pub nonzero_coeffs: usize,
    pub holds: bool,
}

/// Outcome of a multiplicity-bound scan over many polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2ScanReport {
    pub p: u32,
    pub mode: ScanMode,
    pub polynomials: usize,
    pub checks: usize,
    pub violations: usize,
    pub tightest_slack: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    Random,
}

/// Largest prime for which the exhaustive scan is permitted.
pub const EXHAUSTIVE_SCAN_MAX_P: u32 = 3;

fn scan<I>(prime: Prime, mode: ScanMode, polys: I) -> Result<Lemma2ScanReport>
where
    I: IntoIterator<Item = FpPoly>,
{
    let mut report = Lemma2ScanReport {
        p: prime.get(),
        mode,
        polynomials: 0,
        checks: 0,
        violations: 0,
        tightest_slack: usize::MAX,
    };
    for g in polys {
        report.polynomials += 1;
        for a in 1..i64::from(prime.get()) {
            report.checks += 1;
            match g.lemma2_holds(FpScalar::new(prime, a)) {
                Ok(w) => {
                    report.tightest_slack =
                        report.tightest_slack.min(w.nonzero_coeffs - w.multiplicity);
                }
                Err(Error::TheoremViolation(_)) => report.violations += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// Checks every non-zero polynomial of degree below p at every non-zero root.
pub fn lemma2_scan_exhaustive(prime: Prime) -> Result<Lemma2ScanReport> {
    if prime.get() > EXHAUSTIVE_SCAN_MAX_P {
        return Err(Error::TooLarge(format!(
            "exhaustive scan is limited to p <= {EXHAUSTIVE_SCAN_MAX_P}"
        )));
    }
    let p = prime.as_usize();
    let total = (p as u64).pow(p as u32);
    let polys = (1..total).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(p);
        for _ in 0..p {
            coeffs.push((code % p as u64) as i64);
            code /= p as u64;
        }
        FpPoly::new(prime, &coeffs)
    });
    scan(prime, ScanMode::Exhaustive, polys)
}

/// Checks `count` seeded uniformly random non-zero polynomials of degree below p.
pub fn lemma2_scan_random(prime: Prime, count: usize, seed: u64) -> Result<Lemma2ScanReport> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = prime.get();
    let polys = std::iter::repeat_with(move || loop {
        let coeffs: Vec<i64> = (0..p).map(|_| i64::from(rng.gen_range(0..p))).collect();
        let g = FpPoly::new(prime, &coeffs);
        if !g.is_zero() {
            return g;
        }
    })
    .take(count);
    scan(prime, ScanMode::Random, polys)
}

impl Serialize for FpPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        let p = self.p();
        self.zip_with(rhs, |a, b| (a + b) % p)
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        let p = self.p();
        self.zip_with(rhs, |a, b| (a + p - b) % p)
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.prime
            .ensure_same(rhs.prime)
            .expect("operands share a prime");
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.prime);
        }
        let p = self.p();
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        FpPoly::from_residues(self.prime, out)
    }
}
