use alloc::vec::Vec;

use num_rational::BigRational;

use super::gram::HalfIntegralMatrix;
use super::matrix::rational_det;
use crate::{Error, Result};

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return out;
        };
        idx[pos] += 1;
        for k in pos + 1..r {
            idx[k] = idx[k - 1] + 1;
        }
    }
}

/// The matrix `A^[r]` of all `r×r` minors of a square rational matrix `A`
/// (row-major, size `n`), rows and columns indexed by lexicographically
/// ordered `r`-subsets. Returned row-major of side `C(n, r)`.
pub fn minors_of(a: &[BigRational], n: usize, r: usize) -> Result<Vec<BigRational>> {
    if r == 0 || r > n {
        return Err(Error::OutOfRange { what: "minor size r", value: r as i64 });
    }
    let subsets = combinations(n, r);
    let mut out = Vec::with_capacity(subsets.len() * subsets.len());
    let mut block = alloc::vec![BigRational::default(); r * r];
    for rows in &subsets {
        for cols in &subsets {
            for (bi, &i) in rows.iter().enumerate() {
                for (bj, &j) in cols.iter().enumerate() {
                    block[bi * r + bj] = a[i * n + j].clone();
                }
            }
            out.push(rational_det(&block, r));
        }
    }
    Ok(out)
}

/// `T^[r]` for a half-integral `T`.
pub fn minors_matrix(t: &HalfIntegralMatrix, r: usize) -> Result<Vec<BigRational>> {
    minors_of(&t.to_rational(), t.size(), r)
}
