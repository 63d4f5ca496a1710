use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{Prime, Valuation};
use crate::error::{Error, Result};

/// An element of Z[ω] in the basis `1, ω, …, ω^(p-2)`.
///
/// The basis is integral, so two elements are equal exactly when their
/// coefficient vectors are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    prime: Prime,
    coeffs: Vec<BigInt>,
}

/// Folds a length-`p` vector (coefficients of `1..ω^(p-1)`) into the basis
/// using `ω^(p-1) = -(1 + ω + … + ω^(p-2))`.
pub(crate) fn fold_top(mut full: Vec<BigInt>) -> Vec<BigInt> {
    let top = full.pop().expect("length p >= 2");
    if !top.is_zero() {
        for c in full.iter_mut() {
            *c -= &top;
        }
    }
    full
}

impl CycInt {
    pub fn zero(prime: Prime) -> Self {
        CycInt {
            prime,
            coeffs: vec![BigInt::zero(); prime.degree()],
        }
    }

    pub fn one(prime: Prime) -> Self {
        Self::from_integer(prime, BigInt::one())
    }

    pub fn from_integer(prime: Prime, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(prime);
        z.coeffs[0] = n.into();
        z
    }

    pub fn from_coeffs(prime: Prime, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != prime.degree() {
            return Err(Error::BadLength {
                expected: prime.degree(),
                got: coeffs.len(),
            });
        }
        Ok(CycInt { prime, coeffs })
    }

    pub fn from_i64s(prime: Prime, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(prime, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Canonical form of `Σ full[k] ω^k` for an arbitrary-length vector, using `ω^p = 1`.
    pub fn from_power_coeffs(prime: Prime, full: &[BigInt]) -> Self {
        let p = prime.as_usize();
        let mut acc = vec![BigInt::zero(); p];
        for (k, c) in full.iter().enumerate() {
            acc[k % p] += c;
        }
        CycInt {
            prime,
            coeffs: fold_top(acc),
        }
    }

    /// The primitive root ω; for p = 2 this is -1.
    pub fn omega(prime: Prime) -> Self {
        Self::omega_pow(prime, 1)
    }

    /// ω^e for any integer e.
    pub fn omega_pow(prime: Prime, e: i64) -> Self {
        let e = prime.reduce_exponent(e);
        let mut full = vec![BigInt::zero(); prime.as_usize()];
        full[e] = BigInt::one();
        CycInt {
            prime,
            coeffs: fold_top(full),
        }
    }

    /// `1 - ω`, the generator of the kernel of the reduction map.
    pub fn one_minus_omega(prime: Prime) -> Self {
        &Self::one(prime) - &Self::omega(prime)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as an ordinary integer when only the constant term is set.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.prime.ensure_same(other.prime)?;
        Ok(CycInt {
            prime: self.prime,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.prime.ensure_same(other.prime)?;
        Ok(CycInt {
            prime: self.prime,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplies as polynomials in ω modulo `ω^p - 1`, then folds the top term.
    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.prime.ensure_same(other.prime)?;
        let p = self.prime.as_usize();
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                acc[k] += a * b;
            }
        }
        Ok(CycInt {
            prime: self.prime,
            coeffs: fold_top(acc),
        })
    }

    pub fn scale(&self, n: &BigInt) -> CycInt {
        CycInt {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Multiplication by ω^e, done as a rotation in O(p).
    pub fn mul_omega_pow(&self, e: i64) -> CycInt {
        let p = self.prime.as_usize();
        let shift = self.prime.reduce_exponent(e);
        let mut full = vec![BigInt::zero(); p];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[(k + shift) % p] = c.clone();
        }
        CycInt {
            prime: self.prime,
            coeffs: fold_top(full),
        }
    }

    pub fn pow(&self, mut e: u32) -> CycInt {
        let mut base = self.clone();
        let mut acc = CycInt::one(self.prime);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The image under Z[ω] → F_p, ω ↦ 1: the coefficient sum modulo p.
    pub fn reduce_mod_one_minus_omega(&self) -> u64 {
        let sum: BigInt = self.coeffs.iter().sum();
        let r = sum.mod_floor(&BigInt::from(self.prime.get()));
        r.try_into().expect("residue below p fits in u64")
    }

    /// Exact quotient by `1 - ω`.
    ///
    /// With `S = Σ c_k`, `t = S / p` and prefix sums `P_k`, the quotient has
    /// coefficients `P_k - (k + 1) t`. It exists iff `p | S`.
    pub fn divide_by_one_minus_omega(&self) -> Result<CycInt> {
        let p = BigInt::from(self.prime.get());
        let sum: BigInt = self.coeffs.iter().sum();
        let (t, rem) = sum.div_mod_floor(&p);
        if !rem.is_zero() {
            return Err(Error::NotDivisible(
                rem.try_into().expect("residue below p fits in u64"),
            ));
        }
        let mut prefix = BigInt::zero();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                prefix += c;
                &prefix - &t * BigInt::from(k + 1)
            })
            .collect();
        Ok(CycInt {
            prime: self.prime,
            coeffs,
        })
    }

    /// Largest m with `(1 - ω)^m` dividing self.
    pub fn valuation_one_minus_omega(&self) -> Valuation {
        self.split_one_minus_omega().0
    }

    /// Returns `(v, u)` with `self = (1 - ω)^v · u` and u of valuation zero;
    /// `u` is absent for zero.
    pub fn split_one_minus_omega(&self) -> (Valuation, Option<CycInt>) {
        if self.is_zero() {
            return (Valuation::Infinite, None);
        }
        let mut current = self.clone();
        let mut count = 0u64;
        while let Ok(q) = current.divide_by_one_minus_omega() {
            current = q;
            count += 1;
        }
        (Valuation::Finite(count), Some(current))
    }

    /// The automorphism ω ↦ ω^k.
    pub fn galois_conjugate(&self, k: i64) -> Result<CycInt> {
        let p = self.prime.as_usize();
        let k = self.prime.reduce_exponent(k);
        if k == 0 {
            return Err(Error::InvalidGaloisExponent(k as i64));
        }
        let mut full = vec![BigInt::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            full[(j * k) % p] += c;
        }
        Ok(CycInt {
            prime: self.prime,
            coeffs: fold_top(full),
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Parses decimal-string coefficients; the length must be `p - 1`.
    pub fn from_strings<S: AsRef<str>>(prime: Prime, items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(prime, coeffs)
    }

    /// Parses the JSON array form (`["1", "-2", …]`).
    pub fn from_json(prime: Prime, json: &str) -> Result<Self> {
        let items: Vec<String> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_strings(prime, &items)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string array serializes")
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("w")?,
                (1, false) => write!(f, "{mag}w")?,
                (_, true) => write!(f, "w^{k}")?,
                (_, false) => write!(f, "{mag}w^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("operands share a prime")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("operands share a prime")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("operands share a prime")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn ci(p: u64, c: &[i64]) -> CycInt {
        CycInt::from_i64s(prime(p), c).unwrap()
    }

    #[test]
    fn omega_basis_vectors() {
        assert_eq!(CycInt::omega(prime(3)), ci(3, &[0, 1]));
        assert_eq!(CycInt::omega(prime(2)), ci(2, &[-1]));
        assert_eq!(CycInt::omega(prime(5)), ci(5, &[0, 1, 0, 0]));
    }

    #[test]
    fn products_of_omega() {
        let w = CycInt::omega(prime(3));
        assert_eq!(&w * &w, ci(3, &[-1, -1]));
        assert_eq!(&w * &(&w * &w), ci(3, &[1, 0]));
        let w5 = CycInt::omega(prime(5));
        assert!((&w5 + &(-&w5)).is_zero());
    }

    #[test]
    fn omega_powers() {
        assert_eq!(CycInt::omega_pow(prime(5), 7), ci(5, &[0, 0, 1, 0]));
        assert_eq!(CycInt::omega_pow(prime(3), 2), ci(3, &[-1, -1]));
        assert_eq!(CycInt::omega_pow(prime(3), -1), ci(3, &[-1, -1]));
        assert_eq!(CycInt::omega_pow(prime(7), 7), CycInt::one(prime(7)));
    }

    #[test]
    fn mismatched_primes_rejected() {
        let a = CycInt::one(prime(3));
        let b = CycInt::one(prime(5));
        assert_eq!(a.try_add(&b), Err(Error::MismatchedPrimes(3, 5)));
        assert_eq!(a.try_mul(&b), Err(Error::MismatchedPrimes(3, 5)));
    }

    #[test]
    fn reduction_examples() {
        let p = prime(5);
        assert_eq!(CycInt::one_minus_omega(p).reduce_mod_one_minus_omega(), 0);
        assert_eq!(CycInt::omega(p).reduce_mod_one_minus_omega(), 1);
        assert_eq!(CycInt::from_integer(p, 5).reduce_mod_one_minus_omega(), 0);
        assert_eq!(ci(5, &[-1, 0, 0, 0]).reduce_mod_one_minus_omega(), 4);
    }

    #[test]
    fn division_examples() {
        let p3 = prime(3);
        assert_eq!(
            CycInt::one_minus_omega(p3).divide_by_one_minus_omega(),
            Ok(CycInt::one(p3))
        );
        // (1 - ω)(2 + ω) = 2 - ω - ω² = 2 - ω + 1 + ω = 3
        let q = CycInt::from_integer(p3, 3)
            .divide_by_one_minus_omega()
            .unwrap();
        assert_eq!(q, ci(3, &[2, 1]));
        assert_eq!(
            &CycInt::one_minus_omega(p3) * &q,
            CycInt::from_integer(p3, 3)
        );
        assert_eq!(
            CycInt::omega(prime(5)).divide_by_one_minus_omega(),
            Err(Error::NotDivisible(1))
        );
    }

    #[test]
    fn division_for_p2_halves() {
        let p2 = prime(2);
        assert_eq!(
            CycInt::from_integer(p2, 6).divide_by_one_minus_omega(),
            Ok(CycInt::from_integer(p2, 3))
        );
        assert!(CycInt::from_integer(p2, 3)
            .divide_by_one_minus_omega()
            .is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            CycInt::zero(prime(7)).valuation_one_minus_omega(),
            Valuation::Infinite
        );
        assert_eq!(
            CycInt::one_minus_omega(prime(7)).valuation_one_minus_omega(),
            Valuation::Finite(1)
        );
        assert_eq!(
            CycInt::from_integer(prime(5), 5).valuation_one_minus_omega(),
            Valuation::Finite(4)
        );
        let (v, unit) = CycInt::omega(prime(5)).split_one_minus_omega();
        assert_eq!(v, Valuation::Finite(0));
        assert_eq!(unit, Some(CycInt::omega(prime(5))));
    }

    #[test]
    fn galois_on_integers() {
        let p = prime(5);
        let w = CycInt::omega(p);
        assert_eq!(w.galois_conjugate(2).unwrap(), CycInt::omega_pow(p, 2));
        assert_eq!(w.galois_conjugate(5), Err(Error::InvalidGaloisExponent(0)));
    }

    #[test]
    fn rotation_matches_multiplication() {
        let p = prime(7);
        let a = ci(7, &[3, -1, 4, 1, -5, 9]);
        for e in -8..8 {
            assert_eq!(a.mul_omega_pow(e), &a * &CycInt::omega_pow(p, e));
        }
    }

    #[test]
    fn json_form() {
        let a = ci(5, &[1, -2, 0, 30]);
        assert_eq!(a.to_json(), r#"["1","-2","0","30"]"#);
        assert_eq!(CycInt::from_json(prime(5), &a.to_json()), Ok(a));
        assert!(matches!(
            CycInt::from_json(prime(5), r#"["1","2"]"#),
            Err(Error::BadLength {
                expected: 4,
                got: 2
            })
        ));
        assert!(matches!(
            CycInt::from_json(prime(5), r#"["1","x","0","0"]"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(ci(5, &[1, -1, 0, 2]).to_string(), "1 - w + 2w^3");
        assert_eq!(CycInt::zero(prime(3)).to_string(), "0");
    }
}
