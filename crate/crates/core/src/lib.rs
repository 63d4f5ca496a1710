//! Exact arithmetic around the non-vanishing of minors of the prime-order
//! discrete Fourier matrix.
//!
//! - [`cyclotomic`]: Z[ω] and Q(ω), reduction to F_p, division by `1 - ω`.
//! - [`fp_poly`]: polynomials over F_p and the root-multiplicity bound.
//! - [`fourier_minors`]: minors `(ω^(i·j))`, determinants, exhaustive checks.
//! - [`uncertainty`]: exact DFT on Z/p and `|supp f| + |supp f̂| >= p + 1`.
//! - [`recovery`]: k-sparse signals from 2k Fourier samples.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod fourier_minors;
pub mod fp_poly;
pub mod linalg;
pub mod recovery;
pub mod uncertainty;

pub use cyclotomic::{CycInt, CycRat, Prime, Valuation};
pub use error::{Error, Result};
