use alloc::vec::Vec;

use super::primes::{mod_inverse, require_odd_prime};
use crate::{Error, Result};

/// A rectangular matrix over `F_p`, entries stored row-major in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        require_odd_prime(p)?;
        Ok(FpMatrix { p, rows, cols, entries: alloc::vec![0; rows * cols] })
    }

    /// Builds a matrix from signed entries, reducing each mod `p`.
    pub fn from_i64(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        require_odd_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Ok(FpMatrix { p, rows, cols, entries })
    }

    /// Appends a row of residues (already in `[0, p)`).
    pub fn push_row(&mut self, row: &[u64]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch(alloc::format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        debug_assert!(row.iter().all(|&x| x < self.p));
        self.entries.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.entries[i * self.cols + j] = value % self.p;
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.entries.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.swap(row * cols + c, piv * cols + c);
            }
            let inv = mod_inverse(m[row * cols + col], p);
            for c in 0..cols {
                m[row * cols + c] = mulmod(m[row * cols + c], inv, p);
            }
            for r in 0..self.rows {
                if r != row && m[r * cols + col] != 0 {
                    let f = m[r * cols + col];
                    for c in 0..cols {
                        let sub = mulmod(f, m[row * cols + c], p);
                        m[r * cols + c] = (m[r * cols + c] + p - sub) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = alloc::vec![0u64; cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[r * cols + f]) % p;
                }
                v
            })
            .collect()
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Rank of a matrix over `F_p` by Gaussian elimination.
pub fn fp_rank(m: &FpMatrix) -> usize {
    let p = m.p;
    let cols = m.cols;
    let mut a = m.entries.clone();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            a.swap(rank * cols + c, piv * cols + c);
        }
        let inv = mod_inverse(a[rank * cols + col], p);
        for r in rank + 1..m.rows {
            let lead = a[r * cols + col];
            if lead == 0 {
                continue;
            }
            let f = mulmod(lead, inv, p);
            for c in col..cols {
                let sub = mulmod(f, a[rank * cols + c], p);
                a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}
