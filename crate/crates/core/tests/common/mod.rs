//! Seeded generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use chebotarev::cyclotomic::{CycInt, CycRat, Prime};
use chebotarev::uncertainty::Signal;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_cycint(rng: &mut ChaCha8Rng, p: Prime, bound: i64) -> CycInt {
    let coeffs = (0..p.degree())
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    CycInt::from_coeffs(p, coeffs).unwrap()
}

pub fn random_nonzero_cycint(rng: &mut ChaCha8Rng, p: Prime, bound: i64) -> CycInt {
    loop {
        let a = random_cycint(rng, p, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-bound..=bound)),
        BigInt::from(rng.gen_range(1..=bound)),
    )
}

pub fn random_cycrat(rng: &mut ChaCha8Rng, p: Prime, bound: i64) -> CycRat {
    let coeffs: Vec<BigRational> = (0..p.degree())
        .map(|_| random_rational(rng, bound))
        .collect();
    CycRat::from_coeffs(p, &coeffs).unwrap()
}

pub fn random_nonzero_cycrat(rng: &mut ChaCha8Rng, p: Prime, bound: i64) -> CycRat {
    loop {
        let a = random_cycrat(rng, p, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Non-zero value: half the time a plain rational, otherwise a general element.
pub fn random_value(rng: &mut ChaCha8Rng, p: Prime) -> CycRat {
    if rng.gen_bool(0.5) {
        loop {
            let q = random_rational(rng, 9);
            if !q.is_zero() {
                return CycRat::from_rational(p, &q);
            }
        }
    } else {
        random_nonzero_cycrat(rng, p, 9)
    }
}

/// Non-zero rational value.
pub fn random_rational_value(rng: &mut ChaCha8Rng, p: Prime) -> CycRat {
    loop {
        let q = random_rational(rng, 20);
        if !q.is_zero() {
            return CycRat::from_rational(p, &q);
        }
    }
}

/// A signal supported on exactly `size` random positions.
pub fn random_sparse_signal(
    rng: &mut ChaCha8Rng,
    p: Prime,
    size: usize,
    value: impl Fn(&mut ChaCha8Rng, Prime) -> CycRat,
) -> Signal {
    let mut positions: Vec<usize> = (0..p.as_usize()).collect();
    positions.shuffle(rng);
    let mut values = vec![CycRat::zero(p); p.as_usize()];
    for &i in &positions[..size] {
        values[i] = value(rng, p);
    }
    Signal::new(p, values).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, p: Prime, size: usize) -> Vec<i64> {
    let mut positions: Vec<i64> = (0..i64::from(p.get())).collect();
    positions.shuffle(rng);
    positions.truncate(size);
    positions.sort_unstable();
    positions
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Determinant by Laplace expansion along the first row, over Z[ω].
pub fn cofactor_determinant(p: Prime, m: &[Vec<CycInt>]) -> CycInt {
    let n = m.len();
    if n == 0 {
        return CycInt::one(p);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = CycInt::zero(p);
    for c in 0..n {
        let sub: Vec<Vec<CycInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &cofactor_determinant(p, &sub);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Integer matrix product over Z[ω].
pub fn matmul(p: Prime, a: &[Vec<CycInt>], b: &[Vec<CycInt>]) -> Vec<Vec<CycInt>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(CycInt::zero(p), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Coefficients of `(x - 1)^n` reduced mod p, by the binomial theorem.
pub fn x_minus_one_pow_mod(n: u64, p: u64) -> Vec<i64> {
    (0..=n)
        .map(|k| {
            let c = (binomial(n, k) % p) as i64;
            let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
            (sign * c).rem_euclid(p as i64)
        })
        .collect()
}

/// Every signal with entries in {-1, 0, 1}, except zero.
pub fn ternary_signals(p: Prime) -> impl Iterator<Item = Signal> {
    let n = p.as_usize();
    let total = 3u64.pow(n as u32);
    (0..total)
        .map(move |mut code| {
            let mut values = Vec::with_capacity(n);
            for _ in 0..n {
                values.push((code % 3) as i64 - 1);
                code /= 3;
            }
            Signal::from_integers(p, &values).unwrap()
        })
        .filter(|s| !s.is_zero())
}

pub fn is_one(a: &CycRat) -> bool {
    a.to_cycint().is_some_and(|c| c == CycInt::one(a.prime())) && a.denominator().is_one()
}
