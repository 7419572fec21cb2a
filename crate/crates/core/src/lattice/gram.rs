use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{rational_inverse, IntMatrix};
use crate::exactmath::{fp_rank, FpMatrix};
use crate::{Error, Result};

/// Gram matrix of an even integral positive definite lattice.
///
/// Construction checks symmetry, even diagonal and positive definiteness
/// (all leading principal minors positive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    matrix: IntMatrix,
}

impl GramMatrix {
    pub fn new(size: usize, entries: Vec<i64>) -> Result<Self> {
        let matrix = IntMatrix::new(size, size, entries)?;
        Self::from_matrix(matrix)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidMatrix("rows of unequal length".into()));
        }
        Self::new(size, rows.concat())
    }

    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() == 0 {
            return Err(Error::InvalidMatrix("empty Gram matrix".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::InvalidMatrix("not symmetric".into()));
        }
        let m = matrix.rows();
        if (0..m).any(|i| matrix.get(i, i) % 2 != 0) {
            return Err(Error::InvalidMatrix("odd diagonal entry".into()));
        }
        for k in 1..=m {
            let mut minor = IntMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor.set(i, j, matrix.get(i, j));
                }
            }
            if !minor.det().is_positive() {
                return Err(Error::InvalidMatrix("not positive definite".into()));
            }
        }
        Ok(GramMatrix { matrix })
    }

    /// The Gram matrix `2T` of a positive definite half-integral `T`.
    pub fn from_half_integral(t: &HalfIntegralMatrix) -> Result<Self> {
        Self::from_matrix(t.twice().clone())
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `S[x] = xᵀ S x`.
    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    /// `xᵀ S y`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let m = self.size();
        let data = self.matrix.data();
        let mut acc = 0i64;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            let row = &data[i * m..(i + 1) * m];
            let s: i64 = row.iter().zip(y).map(|(a, b)| a * b).sum();
            acc += x[i] * s;
        }
        acc
    }

    /// `S y`.
    pub fn apply(&self, y: &[i64]) -> Vec<i64> {
        let m = self.size();
        (0..m).map(|i| (0..m).map(|j| self.entry(i, j) * y[j]).sum()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn scaled(&self, k: i64) -> Result<GramMatrix> {
        if k <= 0 {
            return Err(Error::OutOfRange { what: "scale factor", value: k });
        }
        let data = self.matrix.data().iter().map(|x| x * k).collect();
        GramMatrix::new(self.size(), data)
    }

    /// Orthogonal sum `self ⊥ other`.
    pub fn orthogonal_sum(&self, other: &GramMatrix) -> GramMatrix {
        let (a, b) = (self.size(), other.size());
        let mut m = IntMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m.set(i, j, self.entry(i, j));
            }
        }
        for i in 0..b {
            for j in 0..b {
                m.set(a + i, a + j, other.entry(i, j));
            }
        }
        GramMatrix { matrix: m }
    }

    /// `S[U] = Uᵀ S U` for a square nonsingular `U`.
    pub fn transform(&self, u: &IntMatrix) -> Result<GramMatrix> {
        GramMatrix::from_matrix(self.matrix.congruent(u)?)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.matrix.to_rational()
    }
}

/// An element of `Λ_n`: a symmetric rational matrix with integral diagonal
/// and half-integral off-diagonal entries, stored as the integer matrix `2T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegralMatrix {
    twice: IntMatrix,
}

impl HalfIntegralMatrix {
    /// From the entries of `2T` (row-major); requires symmetry and even diagonal.
    pub fn from_twice(size: usize, entries: Vec<i64>) -> Result<Self> {
        let twice = IntMatrix::new(size, size, entries)?;
        if !twice.is_symmetric() {
            return Err(Error::InvalidMatrix("not symmetric".into()));
        }
        if (0..size).any(|i| twice.get(i, i) % 2 != 0) {
            return Err(Error::InvalidMatrix("2T must have even diagonal".into()));
        }
        Ok(HalfIntegralMatrix { twice })
    }

    /// The binary matrix `[[a, b/2], [b/2, c]]` of the form `ax² + bxy + cy²`.
    pub fn binary(a: i64, b: i64, c: i64) -> Self {
        HalfIntegralMatrix::from_twice(2, alloc::vec![2 * a, b, b, 2 * c])
            .expect("binary form matrix is half-integral")
    }

    pub fn size(&self) -> usize {
        self.twice.rows()
    }

    pub fn twice(&self) -> &IntMatrix {
        &self.twice
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.twice.get(i, j).into(), 2.into())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        let n = self.size();
        (0..n * n).map(|k| self.entry(k / n, k % n)).collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.size()).map(|i| self.twice.get(i, i) / 2).sum()
    }

    /// `det(T)`.
    pub fn det(&self) -> BigRational {
        let n = self.size() as u32;
        BigRational::new(self.twice.det(), BigInt::from(2).pow(n))
    }

    /// `det(2T)`.
    pub fn det_twice(&self) -> BigInt {
        self.twice.det()
    }

    pub fn is_positive_definite(&self) -> bool {
        GramMatrix::from_matrix(self.twice.clone()).is_ok()
    }

    /// `T[U] = Uᵀ T U`.
    pub fn transform(&self, u: &IntMatrix) -> Result<Self> {
        Ok(HalfIntegralMatrix { twice: self.twice.congruent(u)? })
    }
}

/// The dual lattice `L^♯` with Gram matrix `S⁻¹` and the level `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGram {
    pub base: GramMatrix,
    pub inverse: Vec<BigRational>,
    pub level: BigInt,
}

impl DualGram {
    /// `N · S⁻¹` as an integer matrix (even by definition of the level).
    pub fn scaled_inverse(&self) -> IntMatrix {
        let m = self.base.size();
        let level = BigRational::from_integer(self.level.clone());
        let data = self
            .inverse
            .iter()
            .map(|x| {
                let y = x * &level;
                debug_assert!(y.is_integer());
                i64::try_from(y.to_integer()).expect("scaled inverse fits in i64")
            })
            .collect();
        IntMatrix::new(m, m, data).expect("square")
    }
}

/// Minimal `N ≥ 1` with `N·A` even integral, for a symmetric rational `A`.
pub(crate) fn even_integral_denominator(a: &[BigRational], m: usize) -> BigInt {
    let mut level = BigInt::one();
    for i in 0..m {
        for j in 0..m {
            let den = if i == j {
                (&a[i * m + j] / BigRational::from_integer(2.into())).denom().clone()
            } else {
                a[i * m + j].denom().clone()
            };
            level = level.lcm(&den);
        }
    }
    level
}

pub fn dual_gram(s: &GramMatrix) -> Result<DualGram> {
    let m = s.size();
    let inverse = rational_inverse(&s.to_rational(), m)?;
    let level = even_integral_denominator(&inverse, m);
    Ok(DualGram { base: s.clone(), inverse, level })
}

/// `(det S, level S)`.
pub fn det_level(s: &GramMatrix) -> Result<(BigInt, BigInt)> {
    let det = s.determinant();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok((det, dual_gram(s)?.level))
}

/// Rank of `S` reduced mod `p`.
pub fn rank_mod_p(s: &GramMatrix, p: u64) -> Result<usize> {
    let m = s.size();
    Ok(fp_rank(&FpMatrix::from_i64(p, m, m, s.matrix().data())?))
}

/// Gram matrix of the root lattice `A_n` (`2` on the diagonal, `-1` beside it).
pub fn a_n_gram(n: usize) -> GramMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, 2);
        if i + 1 < n {
            m.set(i, i + 1, -1);
            m.set(i + 1, i, -1);
        }
    }
    GramMatrix::from_matrix(m).expect("A_n is positive definite")
}

/// Gram matrix of `E_8` in the Bourbaki labelling.
pub fn e8_gram() -> GramMatrix {
    let rows: [[i64; 8]; 8] = [
        [2, -1, 0, 0, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, -1],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [0, 0, -1, 0, 0, 0, 0, 2],
    ];
    GramMatrix::new(8, rows.concat()).expect("E8 is positive definite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn validation() {
        assert!(GramMatrix::new(2, alloc::vec![2, 1, 1, 2]).is_ok());
        assert!(GramMatrix::new(2, alloc::vec![2, 1, 0, 2]).is_err());
        assert!(GramMatrix::new(2, alloc::vec![1, 0, 0, 2]).is_err());
        assert!(GramMatrix::new(2, alloc::vec![2, 3, 3, 2]).is_err());
        assert!(HalfIntegralMatrix::from_twice(2, alloc::vec![1, 1, 1, 2]).is_err());
    }

    #[test]
    fn det_level_examples() {
        let a2 = a_n_gram(2);
        assert_eq!(det_level(&a2).unwrap(), (int(3), int(3)));
        assert_eq!(det_level(&e8_gram()).unwrap(), (int(1), int(1)));
        let s = GramMatrix::new(2, alloc::vec![4, 1, 1, 6]).unwrap();
        assert_eq!(det_level(&s).unwrap(), (int(23), int(23)));
        for m in 1..5 {
            let s = (1..m).fold(a_n_gram(1), |acc, _| acc.orthogonal_sum(&a_n_gram(1)));
            assert_eq!(det_level(&s).unwrap(), (int(1 << m), int(4)));
        }
    }

    #[test]
    fn dual_examples() {
        let a2 = GramMatrix::new(2, alloc::vec![2, 1, 1, 2]).unwrap();
        let d = dual_gram(&a2).unwrap();
        let third = |n: i64| BigRational::new(n.into(), 3.into());
        assert_eq!(d.inverse, [third(2), third(-1), third(-1), third(2)]);
        assert_eq!(d.level, int(3));
        let e8 = dual_gram(&e8_gram()).unwrap();
        assert!(e8.inverse.iter().all(|x| x.is_integer()));
        assert_eq!(e8.level, int(1));
    }

    #[test]
    fn rank_mod_p_examples() {
        assert_eq!(rank_mod_p(&e8_gram(), 7).unwrap(), 8);
        let s = GramMatrix::new(2, alloc::vec![4, 1, 1, 6]).unwrap();
        assert_eq!(rank_mod_p(&s, 23).unwrap(), 1);
        assert_eq!(rank_mod_p(&a_n_gram(4), 5).unwrap(), 3);
    }

    #[test]
    fn half_integral_basics() {
        let t = HalfIntegralMatrix::binary(1, 1, 6);
        assert_eq!(t.det(), BigRational::new(23.into(), 4.into()));
        assert_eq!(t.det_twice(), int(23));
        assert_eq!(t.trace(), 7);
        assert!(t.is_positive_definite());
    }
}
