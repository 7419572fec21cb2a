use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gram::{a_n_gram, det_level, GramMatrix};
use super::matrix::IntMatrix;
use crate::exactmath::require_odd_prime;
use crate::{Error, Result};

/// An isometry `U` of order `p` of a lattice, with the fixed-point check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryCertificate {
    pub gram: GramMatrix,
    pub isometry: IntMatrix,
    pub fixed_point_free: bool,
}

impl IsometryCertificate {
    /// Checks `S[U] = S`, `U^p = 1`, `U ≠ 1` and `det(U − 1) ≠ 0`.
    pub fn verify(gram: GramMatrix, isometry: IntMatrix, p: u64) -> Result<Self> {
        let m = gram.size();
        if isometry.rows() != m || isometry.cols() != m {
            return Err(Error::ContractViolation("isometry has the wrong size".into()));
        }
        if gram.matrix().congruent(&isometry)? != *gram.matrix() {
            return Err(Error::ContractViolation("S[U] != S".into()));
        }
        if isometry.is_identity() || !isometry.pow(p)?.is_identity() {
            return Err(Error::ContractViolation(alloc::format!("U does not have order {p}")));
        }
        let fixed_point_free = !isometry.sub(&IntMatrix::identity(m)).det().is_zero();
        if !fixed_point_free {
            return Err(Error::ContractViolation("U has a nonzero fixed vector".into()));
        }
        Ok(IsometryCertificate { gram, isometry, fixed_point_free })
    }
}

/// Companion matrix of the `p`-th cyclotomic polynomial acting on the basis
/// `b, ζb, …, ζ^{p-2}b`: `ζ^{p-1} = −(1 + ζ + … + ζ^{p-2})`.
fn cyclotomic_companion(p: u64) -> IntMatrix {
    let n = (p - 1) as usize;
    let mut u = IntMatrix::zeros(n, n);
    for j in 0..n - 1 {
        u.set(j + 1, j, 1);
    }
    for i in 0..n {
        u.set(i, n - 1, -1);
    }
    u
}

/// The root lattice `A_{p−1}` with the order-`p` isometry induced by cycling
/// the coordinates of the ambient `Z^p` (basis `e_i − e_{i+1}`).
pub fn a_root_lattice(p: u64) -> Result<(GramMatrix, IsometryCertificate)> {
    require_odd_prime(p)?;
    let gram = a_n_gram((p - 1) as usize);
    // e_i - e_{i+1} ↦ e_{i+1} - e_{i+2}; the last one maps to e_p - e_1 = -Σ b_i
    let cert = IsometryCertificate::verify(gram.clone(), cyclotomic_companion(p), p)?;
    Ok((gram, cert))
}

fn binomial(n: u64, k: u64) -> i64 {
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Gram matrix of the ideal `(1−ζ)^k Z[ζ]` of the `p`-th cyclotomic field with
/// the form `Tr(x ȳ)/p`, in the basis `(1−ζ)^k ζ^i`, `0 ≤ i ≤ p−2`.
///
/// `(1−ζ)^k (1−ζ^{-1})^k = Σ_{|e|≤k} (−1)^e C(2k, k+e) ζ^e`, and
/// `Tr(Σ c_e ζ^e) = p Σ_{p|e} c_e − Σ c_e` where `Σ c_e = 0`.
fn cyclotomic_ideal_gram(p: u64, k: u64) -> IntMatrix {
    let n = (p - 1) as usize;
    let pi = p as i64;
    let ki = k as i64;
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let shift = i as i64 - j as i64;
            let mut acc = 0i64;
            for e in -ki..=ki {
                if (e + shift).rem_euclid(pi) == 0 {
                    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
                    acc += sign * binomial(2 * k, (ki + e) as u64);
                }
            }
            g.set(i, j, acc);
        }
    }
    g
}

/// Pairwise size reduction of a Gram matrix: returns `(G', V, V⁻¹)` with
/// `G' = Vᵀ G V` and `V` unimodular.
fn pair_reduce(g: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let n = g.rows();
    let mut g = g.clone();
    let mut v = IntMatrix::identity(n);
    let mut vinv = IntMatrix::identity(n);
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (gij, gjj) = (g.get(i, j), g.get(j, j));
                if 2 * gij.abs() <= gjj {
                    continue;
                }
                // b_i ← b_i − q b_j with q = round(g_ij / g_jj)
                let q = (2 * gij + gjj).div_euclid(2 * gjj);
                if q == 0 {
                    continue;
                }
                for r in 0..n {
                    let x = g.get(r, i) - q * g.get(r, j);
                    g.set(r, i, x);
                }
                for c in 0..n {
                    let x = g.get(i, c) - q * g.get(j, c);
                    g.set(i, c, x);
                }
                for r in 0..n {
                    let x = v.get(r, i) - q * v.get(r, j);
                    v.set(r, i, x);
                }
                // rows of V⁻¹: row_j += q row_i
                for c in 0..n {
                    let x = vinv.get(j, c) + q * vinv.get(i, c);
                    vinv.set(j, c, x);
                }
                changed = true;
            }
        }
        if !changed {
            return (g, v, vinv);
        }
    }
}

/// An even positive definite lattice of rank `p−1`, level `p` and
/// determinant `p^t` with a fixed-point-free isometry of order `p`.
///
/// Built from the ideal `(1−ζ)^k` of `Z[ζ_p]` with `t = 2k − 1`. A rank `p−1`
/// lattice with such an isometry is a one-dimensional `Q(ζ_p)`-space, so its
/// determinant lies in `p^{p−2}·(Q^×)²`; even `t` therefore has no witness
/// and is rejected. All invariants are re-verified before returning.
pub fn p_special_lattice(p: u64, t: u64) -> Result<(GramMatrix, IsometryCertificate)> {
    require_odd_prime(p)?;
    if t < 1 || t > p - 2 {
        return Err(Error::OutOfRange { what: "determinant exponent t", value: t as i64 });
    }
    if t.is_multiple_of(2) {
        return Err(Error::ContractViolation(alloc::format!(
            "det = {p}^{t}: a fixed-point-free order-{p} isometry on rank {} forces an odd exponent",
            p - 1
        )));
    }
    let k = t.div_ceil(2);
    let raw = cyclotomic_ideal_gram(p, k);
    let (reduced, v, vinv) = pair_reduce(&raw);
    let isometry = vinv.mul(&cyclotomic_companion(p))?.mul(&v)?;
    let gram = GramMatrix::from_matrix(reduced)
        .map_err(|e| Error::ContractViolation(alloc::format!("gram check failed: {e}")))?;
    let (det, level) = det_level(&gram)?;
    let expected_det = BigInt::from(p).pow(t as u32);
    if det != expected_det {
        return Err(Error::ContractViolation(alloc::format!("det {det} != {expected_det}")));
    }
    if level != BigInt::from(p) {
        return Err(Error::ContractViolation(alloc::format!("level {level} != {p}")));
    }
    debug_assert!(det.is_positive());
    let cert = IsometryCertificate::verify(gram.clone(), isometry, p)?;
    Ok((gram, cert))
}

/// Odd exponents `t` for which [`p_special_lattice`] produces a witness.
pub fn supported_special_exponents(p: u64) -> Vec<u64> {
    (1..=p.saturating_sub(2)).filter(|t| t % 2 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_lattice_examples() {
        let (g3, _) = a_root_lattice(3).unwrap();
        assert_eq!(g3.matrix().data(), &[2, -1, -1, 2]);
        let (g5, cert) = a_root_lattice(5).unwrap();
        assert_eq!(det_level(&g5).unwrap(), (BigInt::from(5), BigInt::from(5)));
        assert!(cert.isometry.pow(5).unwrap().is_identity());
        let d = cert.isometry.sub(&IntMatrix::identity(4)).det();
        assert_eq!(d.abs(), BigInt::from(5));
    }

    #[test]
    fn ideal_gram_for_k1_is_a_n() {
        for p in [3u64, 5, 7, 11] {
            assert_eq!(cyclotomic_ideal_gram(p, 1), *a_n_gram((p - 1) as usize).matrix());
        }
    }

    #[test]
    fn special_lattices_meet_contract() {
        for p in [3u64, 5, 7, 11, 13] {
            for t in supported_special_exponents(p) {
                let (g, cert) = p_special_lattice(p, t).unwrap();
                assert_eq!(g.size() as u64, p - 1);
                let (det, level) = det_level(&g).unwrap();
                assert_eq!(det, BigInt::from(p).pow(t as u32), "p={p} t={t}");
                assert_eq!(level, BigInt::from(p));
                assert!(cert.fixed_point_free);
            }
        }
    }

    #[test]
    fn rejected_exponents() {
        assert!(matches!(p_special_lattice(7, 2), Err(Error::ContractViolation(_))));
        assert!(matches!(p_special_lattice(7, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(p_special_lattice(7, 6), Err(Error::OutOfRange { .. })));
    }
}
