use serde::Serialize;

use super::IndexSet;
use crate::cyclotomic::{CycInt, CycRat, Prime};
use crate::error::{Error, Result};
use crate::linalg;

/// The square submatrix `(ω^(i·j))` for `i` in `rows`, `j` in `cols`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierMinor {
    prime: Prime,
    rows: IndexSet,
    cols: IndexSet,
    entries: Vec<Vec<CycInt>>,
}

impl FourierMinor {
    pub fn build(prime: Prime, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        Self::build_signed(prime, rows, cols, 1)
    }

    /// Same index sets with entries `ω^(-i·j)`; the entrywise complex conjugate.
    pub fn conjugate(&self) -> FourierMinor {
        Self::build_signed(self.prime, &self.rows, &self.cols, -1)
            .expect("validated on construction")
    }

    fn build_signed(prime: Prime, rows: &IndexSet, cols: &IndexSet, sign: i64) -> Result<Self> {
        prime.ensure_same(rows.prime())?;
        prime.ensure_same(cols.prime())?;
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.is_empty() {
            return Err(Error::EmptySet);
        }
        let entries = rows
            .elems()
            .iter()
            .map(|&i| {
                cols.elems()
                    .iter()
                    .map(|&j| CycInt::omega_pow(prime, sign * i64::from(i) * i64::from(j)))
                    .collect()
            })
            .collect();
        Ok(FourierMinor {
            prime,
            rows: rows.clone(),
            cols: cols.clone(),
            entries,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<CycInt>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn rational_entries(&self) -> linalg::Matrix {
        self.entries
            .iter()
            .map(|row| row.iter().cloned().map(CycRat::from).collect())
            .collect()
    }

    /// Exact determinant by elimination over Q(ω).
    ///
    /// Entries lie in Z[ω], so the result must too; a non-integral value
    /// would mean broken field arithmetic and panics.
    pub fn determinant(&self) -> CycRat {
        let det = linalg::determinant(self.prime, &self.rational_entries());
        assert!(
            det.is_integral(),
            "determinant of an integral matrix has denominator {}",
            det.denominator()
        );
        det
    }

    pub fn determinant_integral(&self) -> CycInt {
        self.determinant().to_cycint().expect("checked integral")
    }

    pub fn is_nonzero_minor(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Like [`is_nonzero_minor`](Self::is_nonzero_minor), but a vanishing
    /// minor is reported as a theorem violation naming `(p, I, J)`.
    pub fn check_nonzero(&self) -> Result<()> {
        if self.is_nonzero_minor() {
            Ok(())
        } else {
            Err(Error::TheoremViolation(format!(
                "minor vanishes: p = {}, I = {:?}, J = {:?}",
                self.prime,
                self.rows.elems(),
                self.cols.elems()
            )))
        }
    }
}
