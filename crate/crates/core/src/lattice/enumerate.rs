use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::gram::GramMatrix;
use super::matrix::IntMatrix;
use crate::{Error, Result};

/// A lattice vector in coordinates together with its norm `S[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub norm: i64,
    pub coords: Vec<i64>,
}

/// Exact Fincke–Pohst data: `S[x] = Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)²`.
struct Cholesky {
    m: usize,
    diag: Vec<BigRational>,
    mu: Vec<BigRational>,
}

impl Cholesky {
    fn new(s: &IntMatrix) -> Self {
        let m = s.rows();
        let mut q: Vec<BigRational> = s.to_rational();
        for i in 0..m {
            for j in i + 1..m {
                let v = q[i * m + j].clone();
                q[j * m + i] = v.clone();
                q[i * m + j] = v / &q[i * m + i];
            }
            for k in i + 1..m {
                for l in k..m {
                    let sub = &q[k * m + i] * &q[i * m + l];
                    q[k * m + l] -= sub;
                }
            }
        }
        let diag = (0..m).map(|i| q[i * m + i].clone()).collect();
        Cholesky { m, diag, mu: q }
    }
}

/// Visits every `x ∈ Z^m` with `xᵀ A x ≤ bound` for a positive definite
/// symmetric integer matrix `A`. The callback receives `(x, xᵀAx)` and
/// returns `false` to stop the search; the return value reports whether the
/// search ran to completion.
pub(crate) fn for_each_short_vector<F: FnMut(&[i64], i64) -> bool>(a: &IntMatrix, bound: i64, mut f: F) -> bool {
    if bound < 0 {
        return true;
    }
    let ch = Cholesky::new(a);
    let m = ch.m;
    let mut x = alloc::vec![0i64; m];
    let budget = BigRational::from_integer(bound.into());
    recurse(&ch, a, m, &budget, &mut x, &mut f)
}

fn recurse<F: FnMut(&[i64], i64) -> bool>(
    ch: &Cholesky,
    a: &IntMatrix,
    level: usize,
    remaining: &BigRational,
    x: &mut Vec<i64>,
    f: &mut F,
) -> bool {
    if level == 0 {
        let norm = quad(a, x);
        return f(x, norm);
    }
    let i = level - 1;
    let m = ch.m;
    let mut center = BigRational::zero();
    for (j, &xj) in x.iter().enumerate().skip(i + 1) {
        if xj != 0 {
            center -= &ch.mu[i * m + j] * BigRational::from_integer(xj.into());
        }
    }
    let d = &ch.diag[i];
    let cost = |xi: i64| -> BigRational {
        let t = BigRational::from_integer(xi.into()) - &center;
        d * &t * &t
    };
    let floor = center.floor().to_integer().to_i64().expect("coordinate fits in i64");
    let (lo, hi) = {
        let ok_a = cost(floor) <= *remaining;
        let ok_b = cost(floor + 1) <= *remaining;
        match (ok_a, ok_b) {
            (false, false) => return true,
            (true, _) | (_, true) => {
                let mut lo = if ok_a { floor } else { floor + 1 };
                while cost(lo - 1) <= *remaining {
                    lo -= 1;
                }
                let mut hi = if ok_b { floor + 1 } else { floor };
                while cost(hi + 1) <= *remaining {
                    hi += 1;
                }
                (lo, hi)
            }
        }
    };
    for xi in lo..=hi {
        x[i] = xi;
        let rest = remaining - cost(xi);
        if !recurse(ch, a, i, &rest, x, f) {
            x[i] = 0;
            return false;
        }
    }
    x[i] = 0;
    true
}

fn quad(a: &IntMatrix, x: &[i64]) -> i64 {
    let m = a.rows();
    let mut acc = 0i64;
    for i in 0..m {
        if x[i] == 0 {
            continue;
        }
        let s: i64 = (0..m).map(|j| a.get(i, j) * x[j]).sum();
        acc += x[i] * s;
    }
    acc
}

/// Largest number of vectors the guarded enumerations return.
pub const ENUMERATION_GUARD: usize = 1 << 20;

fn collect_short_vectors(a: &IntMatrix, bound: i64, limit: usize) -> Option<Vec<LatticeVector>> {
    let mut out = Vec::new();
    let complete = for_each_short_vector(a, bound, |x, norm| {
        out.push(LatticeVector { norm, coords: x.to_vec() });
        out.len() <= limit
    });
    out.sort();
    complete.then_some(out)
}

/// All `x ∈ Z^m` with `S[x] ≤ bound`, including `0` and both `±x`, ordered
/// by norm and then lexicographically.
pub fn enumerate_vectors(s: &GramMatrix, bound: i64) -> Vec<LatticeVector> {
    collect_short_vectors(s.matrix(), bound, usize::MAX).expect("unlimited enumeration completes")
}

/// [`enumerate_vectors`], failing once more than `limit` vectors turn up.
pub fn enumerate_vectors_guarded(s: &GramMatrix, bound: i64, limit: usize) -> Result<Vec<LatticeVector>> {
    collect_short_vectors(s.matrix(), bound, limit).ok_or_else(|| {
        Error::GuardExceeded(alloc::format!("more than {limit} lattice vectors of norm ≤ {bound}"))
    })
}

/// All `z ∈ Z^m` with `zᵀ S⁻¹ z ≤ bound`, where `S⁻¹ = scaled / level`.
///
/// Returned norms are `zᵀ (level·S⁻¹) z`, i.e. scaled by `level`; the
/// corresponding dual vector is `S⁻¹ z`. Fails beyond `limit` vectors.
pub fn enumerate_dual_vectors(
    scaled_inverse: &IntMatrix,
    level: &BigInt,
    bound: &BigRational,
    limit: usize,
) -> Result<Vec<LatticeVector>> {
    let scaled_bound = (bound * BigRational::from_integer(level.clone())).floor().to_integer();
    let scaled_bound = scaled_bound
        .to_i64()
        .ok_or_else(|| Error::GuardExceeded(alloc::format!("dual bound {scaled_bound}")))?;
    collect_short_vectors(scaled_inverse, scaled_bound, limit).ok_or_else(|| {
        Error::GuardExceeded(alloc::format!("more than {limit} dual vectors of norm ≤ {bound}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gram::{a_n_gram, e8_gram};

    #[test]
    fn zero_bound() {
        let v = enumerate_vectors(&a_n_gram(3), 0);
        assert_eq!(v.len(), 1);
        assert!(v[0].coords.iter().all(|&c| c == 0));
    }

    #[test]
    fn root_counts() {
        assert_eq!(enumerate_vectors(&a_n_gram(2), 2).len(), 7);
        let e8 = enumerate_vectors(&e8_gram(), 2);
        assert_eq!(e8.len(), 241);
        assert_eq!(e8.iter().filter(|v| v.norm == 2).count(), 240);
    }

    #[test]
    fn ordering_is_canonical() {
        let v = enumerate_vectors(&a_n_gram(2), 8);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn guard_stops_the_search() {
        let g = a_n_gram(3);
        let all = enumerate_vectors(&g, 6);
        assert_eq!(enumerate_vectors_guarded(&g, 6, all.len()).unwrap(), all);
        assert!(matches!(enumerate_vectors_guarded(&g, 6, all.len() - 1), Err(Error::GuardExceeded(_))));
    }
}
