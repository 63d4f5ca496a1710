use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{CycInt, Prime};
use crate::error::{Error, Result};

/// An element of Q(ω), same basis as [`CycInt`].
///
/// Stored as an integral numerator over one positive denominator with no
/// common factor, so every coefficient view is in lowest terms and equality
/// is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    fn normalized(num: CycInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return CycRat {
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.abs();
        for c in num.coeffs() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return CycRat { num, den };
        }
        let prime = num.prime();
        let coeffs = num.into_coeffs().into_iter().map(|c| c / &g).collect();
        CycRat {
            num: CycInt::from_coeffs(prime, coeffs).expect("length preserved"),
            den: den / g,
        }
    }

    pub fn zero(prime: Prime) -> Self {
        CycInt::zero(prime).into()
    }

    pub fn one(prime: Prime) -> Self {
        CycInt::one(prime).into()
    }

    pub fn omega_pow(prime: Prime, e: i64) -> Self {
        CycInt::omega_pow(prime, e).into()
    }

    pub fn from_integer(prime: Prime, n: impl Into<BigInt>) -> Self {
        CycInt::from_integer(prime, n).into()
    }

    pub fn from_rational(prime: Prime, q: &BigRational) -> Self {
        Self::normalized(
            CycInt::from_integer(prime, q.numer().clone()),
            q.denom().clone(),
        )
    }

    /// Builds from rational coefficients; the length must be `p - 1`.
    pub fn from_coeffs(prime: Prime, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != prime.degree() {
            return Err(Error::BadLength {
                expected: prime.degree(),
                got: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(Self::normalized(CycInt::from_coeffs(prime, num)?, den))
    }

    pub fn prime(&self) -> Prime {
        self.num.prime()
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The element as a member of Z[ω], if its denominators clear.
    pub fn to_cycint(&self) -> Option<CycInt> {
        self.is_integral().then(|| self.num.clone())
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num
            .as_integer()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
    }

    pub fn try_add(&self, other: &CycRat) -> Result<CycRat> {
        self.prime().ensure_same(other.prime())?;
        if self.den == other.den {
            return Ok(Self::normalized(&self.num + &other.num, self.den.clone()));
        }
        let num = &self.num.scale(&other.den) + &other.num.scale(&self.den);
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn try_sub(&self, other: &CycRat) -> Result<CycRat> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycRat) -> Result<CycRat> {
        let num = self.num.try_mul(&other.num)?;
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn scale(&self, q: &BigRational) -> CycRat {
        Self::normalized(self.num.scale(q.numer()), &self.den * q.denom())
    }

    pub fn mul_omega_pow(&self, e: i64) -> CycRat {
        CycRat {
            num: self.num.mul_omega_pow(e),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// numerator's polynomial and Φ_p over Q.
    pub fn inverse(&self) -> Result<CycRat> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let prime = self.prime();
        let inv_num = qpoly::inverse_mod_cyclotomic(prime.as_usize(), self.num.coeffs());
        let inv = CycRat::from_coeffs(prime, &inv_num)?;
        Ok(inv.scale(&BigRational::from_integer(self.den.clone())))
    }

    pub fn try_div(&self, other: &CycRat) -> Result<CycRat> {
        self.try_mul(&other.inverse()?)
    }

    /// The automorphism ω ↦ ω^k, for k not divisible by p.
    pub fn galois_conjugate(&self, k: i64) -> Result<CycRat> {
        Ok(CycRat {
            num: self.num.galois_conjugate(k)?,
            den: self.den.clone(),
        })
    }

    /// Coefficients as `"num/den"` strings, or plain integers when the denominator is 1.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(ToString::to_string).collect()
    }

    /// Accepts `"num/den"` or plain integer strings; reduces to lowest terms.
    pub fn from_strings<S: AsRef<str>>(prime: Prime, items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(prime, &coeffs)
    }

    pub fn from_json(prime: Prime, json: &str) -> Result<Self> {
        let items: Vec<String> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_strings(prime, &items)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string array serializes")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(&e))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(&e))?;
            if d.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|e| bad(&e))?)),
    }
}

impl From<CycInt> for CycRat {
    fn from(num: CycInt) -> Self {
        CycRat {
            num,
            den: BigInt::one(),
        }
    }
}

impl Serialize for CycRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let items = self.to_strings();
        let mut seq = serializer.serialize_seq(Some(items.len()))?;
        for s in &items {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Add for &CycRat {
    type Output = CycRat;
    fn add(self, rhs: &CycRat) -> CycRat {
        self.try_add(rhs).expect("operands share a prime")
    }
}

impl Sub for &CycRat {
    type Output = CycRat;
    fn sub(self, rhs: &CycRat) -> CycRat {
        self.try_sub(rhs).expect("operands share a prime")
    }
}

impl Mul for &CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        self.try_mul(rhs).expect("operands share a prime")
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Dense polynomials over Q, only as much as the inverse needs.
mod qpoly {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Poly = Vec<BigRational>;

    fn trim(mut a: Poly) -> Poly {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn sub(a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let zero = BigRational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let lead = b.last().expect("non-zero divisor").clone();
        let mut rem = a.clone();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in b.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    /// Inverse of `a(x)` modulo `1 + x + … + x^(p-1)`, padded to `p - 1` coefficients.
    pub(super) fn inverse_mod_cyclotomic(p: usize, a: &[BigInt]) -> Vec<BigRational> {
        let phi: Poly = vec![BigRational::one(); p];
        let a: Poly = trim(a.iter().cloned().map(BigRational::from_integer).collect());
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_p is irreducible, so the gcd is a non-zero constant.
        assert_eq!(
            r0.len(),
            1,
            "gcd with the cyclotomic polynomial must be a unit"
        );
        let c = r0[0].clone();
        let mut out: Vec<BigRational> = s0.into_iter().map(|s| s / &c).collect();
        assert!(out.len() < p, "Bezout cofactor degree exceeds p - 2");
        out.resize(p - 1, BigRational::zero());
        out
    }
}
