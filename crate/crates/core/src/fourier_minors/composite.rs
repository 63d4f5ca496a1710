use serde::Serialize;

use super::{FourierMinor, IndexSet};
use crate::cyclotomic::{CycInt, Prime};

/// Gaussian integer `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    /// `i^k`.
    fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => GaussInt { re: 1, im: 0 },
            1 => GaussInt { re: 0, im: 1 },
            2 => GaussInt { re: -1, im: 0 },
            _ => GaussInt { re: 0, im: -1 },
        }
    }

    fn mul(self, o: Self) -> Self {
        GaussInt {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    fn sub(self, o: Self) -> Self {
        GaussInt {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

/// The same index sets under a prime modulus, where the minor cannot vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeControl {
    pub p: u32,
    pub det: CycInt,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeCounterexample {
    pub n: u32,
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub entries: Vec<Vec<GaussInt>>,
    pub det: GaussInt,
    pub det_is_zero: bool,
    pub prime_control: PrimeControl,
}

/// For n = 4 and ω = i, the minor on rows and columns `{0, 2}` is
/// `[[1, 1], [1, 1]]`, which is singular: primality of the modulus is needed.
pub fn composite_counterexample() -> CompositeCounterexample {
    const N: u32 = 4;
    let rows = vec![0u32, 2];
    let cols = vec![0u32, 2];
    let entries: Vec<Vec<GaussInt>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| GaussInt::i_pow(r * c % N)).collect())
        .collect();
    let det = entries[0][0]
        .mul(entries[1][1])
        .sub(entries[0][1].mul(entries[1][0]));

    let p = Prime::new(5).expect("5 is prime");
    let set = IndexSet::from_sorted(p, rows.clone());
    let control = FourierMinor::build(p, &set, &set)
        .expect("valid square minor")
        .determinant_integral();
    CompositeCounterexample {
        n: N,
        rows,
        cols,
        entries,
        det,
        det_is_zero: det.is_zero(),
        prime_control: PrimeControl {
            p: p.get(),
            nonzero: !control.is_zero(),
            det: control,
        },
    }
}
