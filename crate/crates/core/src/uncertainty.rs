//! Exact DFT on Z/p with values in Q(ω), supports, and the uncertainty
//! inequality `|supp f| + |supp f̂| >= p + 1`.
//!
//! Convention: `f̂(j) = Σ_i f(i) ω^(i·j)`, unnormalized, so the forward
//! transform matrix is exactly `(ω^(i·j))`. The inverse carries the `1/p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycRat, Prime};
use crate::error::{Error, Result};
use crate::fourier_minors::IndexSet;
use crate::linalg;

/// A function `Z/p → Q(ω)`, `values[i] = f(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signal {
    prime: Prime,
    values: Vec<CycRat>,
}

/// The transform of a [`Signal`], `values[j] = f̂(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    prime: Prime,
    values: Vec<CycRat>,
}

fn check_values(prime: Prime, values: &[CycRat]) -> Result<()> {
    if values.len() != prime.as_usize() {
        return Err(Error::BadLength {
            expected: prime.as_usize(),
            got: values.len(),
        });
    }
    values.iter().try_for_each(|v| prime.ensure_same(v.prime()))
}

fn support_of(prime: Prime, values: &[CycRat]) -> IndexSet {
    let elems = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i as u32)
        .collect();
    IndexSet::from_sorted(prime, elems)
}

/// `Σ_i values[i] ω^(sign·i·j)` for each j.
fn transform(prime: Prime, values: &[CycRat], sign: i64) -> Vec<CycRat> {
    let p = prime.as_usize();
    (0..p)
        .map(|j| {
            values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .fold(CycRat::zero(prime), |acc, (i, v)| {
                    &acc + &v.mul_omega_pow(sign * (i * j) as i64)
                })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    p: u64,
    values: Vec<Vec<String>>,
}

fn parse_vector(json: &str) -> Result<(Prime, Vec<CycRat>)> {
    let raw: RawVector = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let prime = Prime::new(raw.p)?;
    let values = raw
        .values
        .iter()
        .map(|v| CycRat::from_strings(prime, v))
        .collect::<Result<Vec<_>>>()?;
    check_values(prime, &values)?;
    Ok((prime, values))
}

fn write_vector(prime: Prime, values: &[CycRat]) -> RawVector {
    RawVector {
        p: u64::from(prime.get()),
        values: values.iter().map(CycRat::to_strings).collect(),
    }
}

macro_rules! vector_type {
    ($ty:ident) => {
        impl $ty {
            pub fn new(prime: Prime, values: Vec<CycRat>) -> Result<Self> {
                check_values(prime, &values)?;
                Ok($ty { prime, values })
            }

            pub fn zero(prime: Prime) -> Self {
                $ty {
                    prime,
                    values: vec![CycRat::zero(prime); prime.as_usize()],
                }
            }

            /// Integer-valued vector.
            pub fn from_integers(prime: Prime, values: &[i64]) -> Result<Self> {
                Self::new(
                    prime,
                    values
                        .iter()
                        .map(|&v| CycRat::from_integer(prime, v))
                        .collect(),
                )
            }

            pub fn prime(&self) -> Prime {
                self.prime
            }

            pub fn values(&self) -> &[CycRat] {
                &self.values
            }

            pub fn is_zero(&self) -> bool {
                self.values.iter().all(CycRat::is_zero)
            }

            /// Positions with a non-zero value.
            pub fn support(&self) -> IndexSet {
                support_of(self.prime, &self.values)
            }

            /// `{"p": 5, "values": [["1","0",…], …]}`.
            pub fn from_json(json: &str) -> Result<Self> {
                let (prime, values) = parse_vector(json)?;
                Ok($ty { prime, values })
            }

            pub fn to_json(&self) -> String {
                serde_json::to_string(self).expect("string arrays serialize")
            }
        }

        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                write_vector(self.prime, &self.values).serialize(serializer)
            }
        }
    };
}

vector_type!(Signal);
vector_type!(Spectrum);

impl Signal {
    /// Indicator of position `i` (taken mod p).
    pub fn delta(prime: Prime, i: i64) -> Self {
        let mut s = Self::zero(prime);
        s.values[prime.reduce_exponent(i)] = CycRat::one(prime);
        s
    }

    pub fn dft(&self) -> Spectrum {
        Spectrum {
            prime: self.prime,
            values: transform(self.prime, &self.values, 1),
        }
    }

    /// `i ↦ f(i - s)`.
    pub fn shifted(&self, s: i64) -> Signal {
        let p = self.prime.as_usize();
        let s = self.prime.reduce_exponent(s);
        Signal {
            prime: self.prime,
            values: (0..p)
                .map(|i| self.values[(i + p - s) % p].clone())
                .collect(),
        }
    }

    /// Reinterprets the values as a spectrum, without transforming.
    pub fn as_spectrum(&self) -> Spectrum {
        Spectrum {
            prime: self.prime,
            values: self.values.clone(),
        }
    }
}

impl Spectrum {
    /// `f(i) = p^(-1) Σ_j F(j) ω^(-i·j)`.
    pub fn idft(&self) -> Signal {
        let inv_p = BigRational::new(BigInt::from(1), BigInt::from(self.prime.get()));
        Signal {
            prime: self.prime,
            values: transform(self.prime, &self.values, -1)
                .iter()
                .map(|v| v.scale(&inv_p))
                .collect(),
        }
    }

    /// Reinterprets the values as a signal, without transforming.
    pub fn as_signal(&self) -> Signal {
        Signal {
            prime: self.prime,
            values: self.values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncertaintyReport {
    pub p: u32,
    pub supp_f: usize,
    pub supp_fhat: usize,
    pub sum: usize,
    pub holds: bool,
}

/// Computes both supports exactly and checks `|supp f| + |supp f̂| >= p + 1`.
pub fn uncertainty_check(f: &Signal) -> Result<UncertaintyReport> {
    if f.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let supp_f = f.support().len();
    let supp_fhat = f.dft().support().len();
    let sum = supp_f + supp_fhat;
    let p = f.prime().as_usize();
    if sum < p + 1 {
        return Err(Error::TheoremViolation(format!(
            "p = {p}: |supp f| + |supp f^| = {supp_f} + {supp_fhat} < {}",
            p + 1
        )));
    }
    Ok(UncertaintyReport {
        p: f.prime().get(),
        supp_f,
        supp_fhat,
        sum,
        holds: true,
    })
}

/// A signal with exactly `k` non-zero values whose transform has exactly
/// `p + 1 - k`.
///
/// The support is `{0, …, k-1}` and the spectrum is forced to vanish on
/// `{1, …, k-1}`. The values are the signed maximal minors of the
/// `(k-1) × k` matrix `(ω^(r·i))`, `r ∈ {1..k-1}`, `i ∈ {0..k-1}`, so
/// `f̂(j)` is the k×k Fourier minor on rows `{j, 1, …, k-1}`: zero for
/// `j < k` with `j ≠ 0` (repeated row) and non-zero otherwise.
pub fn construct_extremal(prime: Prime, k: usize) -> Result<Signal> {
    let p = prime.as_usize();
    if k == 0 || k > p {
        return Err(Error::OutOfRange(format!("k = {k} not in 1..={p}")));
    }
    let mut values = vec![CycRat::zero(prime); p];
    for (i, slot) in values.iter_mut().enumerate().take(k) {
        let minor: linalg::Matrix = (1..k)
            .map(|r| {
                (0..k)
                    .filter(|&c| c != i)
                    .map(|c| CycRat::omega_pow(prime, (r * c) as i64))
                    .collect()
            })
            .collect();
        let det = linalg::determinant(prime, &minor);
        *slot = if i % 2 == 0 { det } else { -&det };
    }
    let f = Signal { prime, values };
    let (supp_f, supp_fhat) = (f.support().len(), f.dft().support().len());
    if supp_f != k || supp_fhat != p + 1 - k {
        return Err(Error::TheoremViolation(format!(
            "extremal construction for p = {p}, k = {k} gave supports ({supp_f}, {supp_fhat})"
        )));
    }
    Ok(f)
}
