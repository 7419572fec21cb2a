use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::gram::GramMatrix;
use crate::exactmath::{hilbert_symbol, prime_divisors, Place};
use crate::{Error, Result};

/// Diagonalizes a nonsingular symmetric rational matrix by symmetric
/// elimination, returning diagonal entries `a_1, …, a_m` of an orthogonal
/// basis of the quadratic space.
pub fn rational_diagonalization(a: &[BigRational], m: usize) -> Result<Vec<BigRational>> {
    let mut a = a.to_vec();
    let mut diag = Vec::with_capacity(m);
    for k in 0..m {
        if a[k * m + k].is_zero() {
            if let Some(j) = (k + 1..m).find(|&j| !a[j * m + j].is_zero()) {
                swap_index(&mut a, m, k, j);
            } else if let Some(j) = (k + 1..m).find(|&j| !a[k * m + j].is_zero()) {
                // e_k ↦ e_k + e_j gives a nonzero pivot 2a_kj (a_jj = 0 here)
                for c in 0..m {
                    let v = a[j * m + c].clone();
                    a[k * m + c] += v;
                }
                for r in 0..m {
                    let v = a[r * m + j].clone();
                    a[r * m + k] += v;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let pivot = a[k * m + k].clone();
        for i in k + 1..m {
            if a[i * m + k].is_zero() {
                continue;
            }
            let f = &a[i * m + k] / &pivot;
            for c in k..m {
                let sub = &f * &a[k * m + c];
                a[i * m + c] -= sub;
            }
            for r in k..m {
                let sub = &f * &a[r * m + k];
                a[r * m + i] -= sub;
            }
        }
        diag.push(pivot);
    }
    Ok(diag)
}

fn swap_index(a: &mut [BigRational], m: usize, i: usize, j: usize) {
    for c in 0..m {
        a.swap(i * m + c, j * m + c);
    }
    for r in 0..m {
        a.swap(r * m + i, r * m + j);
    }
}

/// Hasse–Witt invariant `∏_{i<j} (a_i, a_j)_v` of a diagonalization of `S`.
pub fn hasse_witt(s: &GramMatrix, v: Place) -> Result<i8> {
    let diag = rational_diagonalization(&s.to_rational(), s.size())?;
    hasse_witt_of_diagonal(&diag, v)
}

pub fn hasse_witt_of_diagonal(diag: &[BigRational], v: Place) -> Result<i8> {
    let mut s = 1i8;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert_symbol(&diag[i], &diag[j], v)?;
        }
    }
    Ok(s)
}

/// The places where the Hasse–Witt invariant of `S` can be nontrivial: `∞`,
/// `2` and every prime dividing a numerator or denominator of the diagonal.
pub fn relevant_places(s: &GramMatrix) -> Result<Vec<Place>> {
    let diag = rational_diagonalization(&s.to_rational(), s.size())?;
    let mut primes = BTreeSet::new();
    primes.insert(2u64);
    for d in &diag {
        primes.extend(prime_divisors(d.numer()));
        primes.extend(prime_divisors(d.denom()));
    }
    let mut out = alloc::vec![Place::Infinity];
    out.extend(primes.into_iter().map(Place::Prime));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gram::a_n_gram;

    #[test]
    fn diagonal_of_a2() {
        let d = rational_diagonalization(&a_n_gram(2).to_rational(), 2).unwrap();
        assert_eq!(d, [BigRational::from_integer(2.into()), BigRational::new(3.into(), 2.into())]);
    }

    #[test]
    fn trivial_diagonals() {
        let ones: Vec<BigRational> = (0..5).map(|_| BigRational::from_integer(1.into())).collect();
        for p in [3u64, 5, 7, 23] {
            assert_eq!(hasse_witt_of_diagonal(&ones, Place::Prime(p)), Ok(1));
        }
        let hyp = [BigRational::from_integer(1.into()), BigRational::from_integer((-1).into())];
        assert_eq!(hasse_witt_of_diagonal(&hyp, Place::Infinity), Ok(1));
    }

    #[test]
    fn zero_pivot_handling() {
        // [[0,1],[1,0]] needs the e_k + e_j step
        let h: Vec<BigRational> =
            [0, 1, 1, 0].iter().map(|&x: &i64| BigRational::from_integer(x.into())).collect();
        let d = rational_diagonalization(&h, 2).unwrap();
        assert_eq!(d[0].clone() * d[1].clone(), BigRational::from_integer((-1).into()));
    }
}
