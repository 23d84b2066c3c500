//! Dense integer matrices and their exact rank.
//!
//! Rank is computed by fraction-free (Bareiss) elimination with full pivoting. The
//! pivot at step `k` is the first nonzero entry of the trailing block in row-major
//! order. Every division in the update is exact, so entries stay integral; they are
//! bounded by minors of the input. The elimination first runs on checked `i128` and
//! restarts on `BigInt` if any intermediate product overflows.

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    /// Row-major entries; panics if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let small: Vec<i128> = self.entries.iter().map(|&x| i128::from(x)).collect();
        if let Some(r) = bareiss_rank(small, self.rows, self.cols) {
            return r;
        }
        let big: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        bareiss_rank(big, self.rows, self.cols).expect("arbitrary precision cannot overflow")
    }
}

/// Fraction-free elimination; `None` if the scalar type overflowed.
fn bareiss_rank<T>(mut a: Vec<T>, rows: usize, cols: usize) -> Option<usize>
where
    T: Clone + Zero + One + CheckedMul + CheckedSub + CheckedDiv,
{
    let mut prev = T::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = first_nonzero(&a, rows, cols, k) else {
            break;
        };
        if pi != k {
            for j in 0..cols {
                a.swap(pi * cols + j, k * cols + j);
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + k);
            }
        }
        let pivot = a[k * cols + k].clone();
        for i in k + 1..rows {
            let lead = a[i * cols + k].clone();
            for j in k + 1..cols {
                let keep = pivot.checked_mul(&a[i * cols + j])?;
                let cross = lead.checked_mul(&a[k * cols + j])?;
                a[i * cols + j] = keep.checked_sub(&cross)?.checked_div(&prev)?;
            }
            a[i * cols + k] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn first_nonzero<T: Zero>(a: &[T], rows: usize, cols: usize, k: usize) -> Option<(usize, usize)> {
    (k..rows).find_map(|i| {
        (k..cols)
            .find(|&j| !a[i * cols + j].is_zero())
            .map(|j| (i, j))
    })
}
