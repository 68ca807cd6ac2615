//! Dense matrices over GF(2) with packed rows.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Rows given as 0/1 slices of equal length.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j] != 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Rank by Gaussian elimination on packed rows.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    if m.words == 1 {
        let mut rows = m.bits.clone();
        return rank_of_words(&mut rows);
    }
    let mut bits = m.bits.clone();
    let w = m.words;
    let mut rank = 0;
    for col in 0..m.cols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..m.rows).find(|&r| bits[r * w + word] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..w {
                bits.swap(pivot * w + k, rank * w + k);
            }
        }
        for r in rank + 1..m.rows {
            if bits[r * w + word] & bit != 0 {
                for k in word..w {
                    let x = bits[rank * w + k];
                    bits[r * w + k] ^= x;
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Rank of rows that each fit in one word. Clobbers `rows`.
pub fn rank_of_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in &mut rows[i + 1..] {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Nonzero diagonal, and for every `i` either column `i` is zero above the
/// diagonal or row `i` is zero left of it.
pub fn is_arrow(m: &Gf2Matrix) -> Result<bool> {
    if m.rows != m.cols {
        return Err(Error::InvalidArgument(format!(
            "arrow test needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok((0..m.rows).all(|i| {
        m.get(i, i) && ((0..i).all(|r| !m.get(r, i)) || (0..i).all(|c| !m.get(i, c)))
    }))
}
