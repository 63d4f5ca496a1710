//! Gaussian elimination over Q(ω).
//!
//! Pivots are the first non-zero entry in column order; there are no
//! numerical concerns in exact arithmetic, so the choice only fixes results
//! deterministically.

use crate::cyclotomic::{CycRat, Prime};

pub type Matrix = Vec<Vec<CycRat>>;

fn assert_square(m: &Matrix) -> usize {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    n
}

fn find_pivot(m: &Matrix, col: usize) -> Option<usize> {
    (col..m.len()).find(|&r| !m[r][col].is_zero())
}

/// Exact determinant. The empty matrix has determinant 1.
pub fn determinant(prime: Prime, matrix: &Matrix) -> CycRat {
    let n = assert_square(matrix);
    let mut m = matrix.clone();
    let mut det = CycRat::one(prime);
    for col in 0..n {
        let Some(pivot_row) = find_pivot(&m, col) else {
            return CycRat::zero(prime);
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -&det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        if col + 1 == n {
            break;
        }
        let pivot_inv = pivot.inverse().expect("pivot is non-zero");
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &pivot_inv;
            for c in col + 1..n {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
            row[col] = CycRat::zero(prime);
        }
    }
    det
}

/// Solves `matrix · x = rhs`; `None` when the matrix is singular.
pub fn solve(matrix: &Matrix, rhs: &[CycRat]) -> Option<Vec<CycRat>> {
    let n = assert_square(matrix);
    assert_eq!(rhs.len(), n, "right-hand side length must match");
    let mut m: Matrix = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = find_pivot(&m, col)?;
        m.swap(pivot_row, col);
        let pivot_inv = m[col][col].inverse().expect("pivot is non-zero");
        for v in &mut m[col][col..] {
            *v = &*v * &pivot_inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..=n {
                if !pivot[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot[c]);
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
