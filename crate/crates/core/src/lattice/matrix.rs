use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.set(i, j, i64::try_from(acc).map_err(|_| overflow())?);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `Uᵀ · self · U`.
    pub fn congruent(&self, u: &IntMatrix) -> Result<IntMatrix> {
        u.transpose().mul(self)?.mul(u)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<BigInt> = self.data.iter().map(|&x| BigInt::from(x)).collect();
        bareiss_det(&mut a, n)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.data.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }
}

fn overflow() -> Error {
    Error::GuardExceeded("64-bit integer overflow in matrix arithmetic".into())
}

/// Bareiss determinant of an `n×n` integer matrix stored row-major; destroys `a`.
pub(crate) fn bareiss_det(a: &mut [BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn rational_det(a: &[BigRational], n: usize) -> BigRational {
    let mut a = a.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let f = &a[i * n + k] / &pivot;
            for j in k..n {
                let sub = &f * &a[k * n + j];
                a[i * n + j] -= sub;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn rational_inverse(a: &[BigRational], n: usize) -> Result<Vec<BigRational>> {
    let mut a = a.to_vec();
    let mut inv: Vec<BigRational> = (0..n * n)
        .map(|idx| if idx / n == idx % n { BigRational::one() } else { BigRational::zero() })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&r| !a[r * n + k].is_zero()).ok_or(Error::Singular)?;
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
                inv.swap(k * n + c, piv * n + c);
            }
        }
        let pivot = a[k * n + k].clone();
        for c in 0..n {
            a[k * n + c] /= &pivot;
            inv[k * n + c] /= &pivot;
        }
        for r in 0..n {
            if r == k || a[r * n + k].is_zero() {
                continue;
            }
            let f = a[r * n + k].clone();
            for c in 0..n {
                let s1 = &f * &a[k * n + c];
                a[r * n + c] -= s1;
                let s2 = &f * &inv[k * n + c];
                inv[r * n + c] -= s2;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_agree() {
        let m = IntMatrix::new(3, 3, alloc::vec![2, -1, 0, -1, 2, -1, 0, -1, 2]).unwrap();
        assert_eq!(m.det(), BigInt::from(4));
        assert_eq!(rational_det(&m.to_rational(), 3), BigRational::from_integer(4.into()));
        let singular = IntMatrix::new(2, 2, alloc::vec![1, 2, 2, 4]).unwrap();
        assert!(singular.det().is_zero());
        let needs_swap = IntMatrix::new(2, 2, alloc::vec![0, 1, 1, 0]).unwrap();
        assert_eq!(needs_swap.det(), BigInt::from(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IntMatrix::new(2, 2, alloc::vec![4, 1, 1, 6]).unwrap();
        let inv = rational_inverse(&m.to_rational(), 2).unwrap();
        assert_eq!(inv[0], BigRational::new(6.into(), 23.into()));
        assert_eq!(inv[1], BigRational::new((-1).into(), 23.into()));
        assert!(rational_inverse(&IntMatrix::zeros(2, 2).to_rational(), 2).is_err());
    }

    #[test]
    fn matrix_powers() {
        let c = IntMatrix::new(2, 2, alloc::vec![0, -1, 1, -1]).unwrap();
        assert!(c.pow(3).unwrap().is_identity());
        assert!(!c.pow(2).unwrap().is_identity());
    }
}
