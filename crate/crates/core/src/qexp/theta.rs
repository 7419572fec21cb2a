use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::expansion::{CuspTag, IndexKey, QExpansion};
use crate::exactmath::{is_prime, split_p_power, PadicValue, Place};
use crate::lattice::{
    det_level, dual_gram, enumerate_dual_vectors, enumerate_vectors_guarded, hasse_witt, GramMatrix,
    IntMatrix, ENUMERATION_GUARD,
};
use crate::{Error, Result};

/// The pluriharmonic weight `P(x)` of a theta series: `1` or `det`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Harmonic {
    One,
    Det,
}

/// A candidate column. With denominator `d`, `left_u · right_v = d·B(u, v)`
/// for the underlying vectors `u, v ∈ L^♯`, and `left = d·u` in coordinates.
struct Column {
    left: Vec<i64>,
    right: Vec<i64>,
    norm: i64,
}

fn lattice_columns(s: &GramMatrix, bound: i64, d: i64) -> Result<Vec<Column>> {
    Ok(enumerate_vectors_guarded(s, 2 * bound, ENUMERATION_GUARD)?
        .into_iter()
        .map(|v| Column {
            right: s.apply(&v.coords),
            left: v.coords.iter().map(|&c| c * d).collect(),
            norm: v.norm * d,
        })
        .collect())
}

fn dual_columns(s: &GramMatrix, bound: i64) -> Result<Vec<Column>> {
    let dual = dual_gram(s)?;
    let scaled = dual.scaled_inverse();
    let limit = BigRational::from_integer(BigInt::from(2 * bound));
    Ok(enumerate_dual_vectors(&scaled, &dual.level, &limit, ENUMERATION_GUARD)?
        .into_iter()
        .map(|v| {
            let m = scaled.rows();
            let left = (0..m)
                .map(|i| (0..m).map(|k| scaled.get(i, k) * v.coords[k]).sum())
                .collect();
            Column { left, right: v.coords, norm: v.norm }
        })
        .collect())
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant of the square matrix with the given columns.
fn column_det(cols: &[&Column]) -> BigInt {
    let n = cols.len();
    match n {
        1 => cols[0].left[0].into(),
        2 => {
            let (a, b) = (&cols[0].left, &cols[1].left);
            (a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128).into()
        }
        _ => {
            let data = (0..n * n).map(|k| cols[k % n].left[k / n]).collect();
            IntMatrix::new(n, n, data).expect("square").det()
        }
    }
}

/// Sums the weight over all tuples of columns (one from each list) whose
/// norms add up to at most `budget`, keyed by the scaled Gram matrix.
fn assemble(
    lists: &[Vec<Column>],
    budget: i64,
    harmonic: Harmonic,
) -> BTreeMap<IndexKey, BigInt> {
    let n = lists.len();
    let mut out: BTreeMap<IndexKey, BigInt> = BTreeMap::new();
    let mut chosen: Vec<&Column> = Vec::with_capacity(n);
    fn step<'a>(
        lists: &'a [Vec<Column>],
        remaining: i64,
        chosen: &mut Vec<&'a Column>,
        harmonic: Harmonic,
        out: &mut BTreeMap<IndexKey, BigInt>,
    ) {
        let k = chosen.len();
        let n = lists.len();
        if k == n {
            let weight = match harmonic {
                Harmonic::One => BigInt::from(1),
                Harmonic::Det => column_det(chosen),
            };
            if weight == BigInt::from(0) {
                return;
            }
            let mut data = alloc::vec![0i64; n * n];
            for i in 0..n {
                for j in i..n {
                    let v = if i == j { chosen[i].norm } else { dot(&chosen[i].left, &chosen[j].right) };
                    data[i * n + j] = v;
                    data[j * n + i] = v;
                }
            }
            let key = IndexKey::new(IntMatrix::new(n, n, data).expect("square")).expect("symmetric");
            *out.entry(key).or_default() += weight;
            return;
        }
        let list = &lists[k];
        let end = list.partition_point(|c| c.norm <= remaining);
        for c in &list[..end] {
            chosen.push(c);
            step(lists, remaining - c.norm, chosen, harmonic, out);
            chosen.pop();
        }
    }
    step(lists, budget, &mut chosen, harmonic, &mut out);
    out
}

fn bound_i64(bound: u64) -> Result<i64> {
    i64::try_from(bound)
        .ok()
        .filter(|b| *b <= i64::MAX / 1024)
        .ok_or(Error::GuardExceeded(format!("trace bound {bound}")))
}

/// Mixed theta series `Σ_{x ∈ L^{n−j} × (L^♯)^j} P(x) e^{2πi tr(q(x)Z)}`.
///
/// For `j > 0` the level of `S` must be a prime `p`, and indices carry
/// denominator `p`. `Harmonic::Det` needs `m = n`.
pub fn mixed_theta(
    s: &GramMatrix,
    n: usize,
    j: usize,
    bound: u64,
    harmonic: Harmonic,
) -> Result<QExpansion> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "degree", value: 0 });
    }
    if j > n {
        return Err(Error::OutOfRange { what: "cusp index j", value: j as i64 });
    }
    if harmonic == Harmonic::Det && s.size() != n {
        return Err(Error::ShapeMismatch(format!(
            "det weight needs rank {} = degree {n}",
            s.size()
        )));
    }
    let b = bound_i64(bound)?;
    let d = if j == 0 { 1 } else { prime_level(s)? };
    let mut lists = Vec::with_capacity(n);
    for k in 0..n {
        if k < n - j {
            lists.push(lattice_columns(s, b, d as i64)?);
        } else {
            lists.push(dual_columns(s, b)?);
        }
    }
    let sums = assemble(&lists, 2 * d as i64 * b, harmonic);
    let scale = match harmonic {
        Harmonic::One => BigInt::from(1),
        Harmonic::Det => BigInt::from(d).pow(n as u32),
    };
    let coeffs = sums
        .into_iter()
        .map(|(k, v)| (k, BigRational::new(v, scale.clone())))
        .collect();
    QExpansion::new(n, bound, d, coeffs)
}

fn prime_level(s: &GramMatrix) -> Result<u64> {
    let (_, level) = det_level(s)?;
    match level.to_u64() {
        Some(p) if is_prime(p) => Ok(p),
        _ => Err(Error::ContractViolation(format!("level {level} is not prime"))),
    }
}

/// `θ^n_S`: the coefficient at `T` counts `X ∈ Z^{m×n}` with `S[X] = 2T`.
pub fn theta_expansion(s: &GramMatrix, n: usize, bound: u64) -> Result<QExpansion> {
    mixed_theta(s, n, 0, bound, Harmonic::One)
}

/// `θ^n_{S,det}`: the coefficient at `T` is `Σ det X` over `S[X] = 2T`.
pub fn theta_det_expansion(s: &GramMatrix, n: usize, bound: u64) -> Result<QExpansion> {
    mixed_theta(s, n, 0, bound, Harmonic::Det)
}

/// The expansion of `θ^n(P, L)` at the cusp `ω_j`:
/// `(γ_p s_p)^j det(L)^{−j/2} θ^{(n−j, j)}(P, L, L^♯)`.
///
/// The sign `s_p^j` is applied to the coefficients, `det(L)^{−j/2}`
/// contributes `p^{−jν_p(det L)/2}` to the prefactor and the remaining unit
/// (including `γ_p^j`) is recorded in the cusp tag.
pub fn slash_cusp(
    s: &GramMatrix,
    n: usize,
    j: usize,
    bound: u64,
    harmonic: Harmonic,
) -> Result<QExpansion> {
    let f = mixed_theta(s, n, j, bound, harmonic)?;
    if j == 0 {
        return Ok(f);
    }
    let p = f.denominator();
    let (nu, det_unit) = split_p_power(&s.determinant(), p);
    let sign = hasse_witt(s, Place::Prime(p))?;
    let f = if sign < 0 && j % 2 == 1 {
        f.scale(&BigRational::from_integer((-1).into()))
    } else {
        f
    };
    Ok(f.with_prefactor(PadicValue::from_halves(-(j as i64) * nu as i64)).with_cusp(Some(
        CuspTag { prime: p, step: j, det_unit, odd_det_exponent: nu % 2 == 1 },
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqf::BinaryForm;
    use crate::lattice::{a_n_gram, e8_gram, HalfIntegralMatrix};

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn key(n: usize, data: &[i64]) -> IndexKey {
        IndexKey::new(IntMatrix::new(n, n, data.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn degree_one_counts() {
        let f = theta_expansion(&a_n_gram(2), 1, 10).unwrap();
        assert_eq!(f.constant_term(), int(1));
        assert_eq!(f.coefficient_at(&key(1, &[2])).unwrap(), int(6));
        let e8 = theta_expansion(&e8_gram(), 1, 3).unwrap();
        assert_eq!(e8.coefficient_at(&key(1, &[2])).unwrap(), int(240));
        assert_eq!(e8.coefficient_at(&key(1, &[4])).unwrap(), int(2160));
        assert_eq!(e8.coefficient_at(&key(1, &[6])).unwrap(), int(6720));
        assert!(e8.coefficient_at(&key(1, &[8])).is_err());
    }

    #[test]
    fn binary_table() {
        let forms = [BinaryForm::new(1, 1, 6), BinaryForm::new(2, 1, 3)];
        for (i, fi) in forms.iter().enumerate() {
            let s = fi.gram().unwrap();
            let theta = theta_expansion(&s, 2, 12).unwrap();
            for (j, fj) in forms.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 0) => 4,
                    _ if i == j => 2,
                    _ => 0,
                };
                assert_eq!(theta.coefficient(&fj.matrix()).unwrap(), int(expected));
            }
        }
    }

    #[test]
    fn det_weighted() {
        let s = BinaryForm::new(2, 1, 3).gram().unwrap();
        let f = theta_det_expansion(&s, 2, 12).unwrap();
        assert_eq!(f.constant_term(), int(0));
        assert_eq!(f.coefficient(&HalfIntegralMatrix::binary(2, 1, 3)).unwrap(), int(2));
        let improper = BinaryForm::new(1, 1, 6).gram().unwrap();
        assert!(theta_det_expansion(&improper, 2, 12).unwrap().is_zero());
        let sq = GramMatrix::new(2, alloc::vec![2, 0, 0, 2]).unwrap();
        assert!(theta_det_expansion(&sq, 2, 20).unwrap().is_zero());
        assert!(theta_det_expansion(&a_n_gram(3), 2, 5).is_err());
    }

    #[test]
    fn mixed_examples() {
        let a2 = GramMatrix::new(2, alloc::vec![2, 1, 1, 2]).unwrap();
        assert_eq!(mixed_theta(&a2, 1, 0, 6, Harmonic::One).unwrap(), theta_expansion(&a2, 1, 6).unwrap());
        let f = mixed_theta(&a2, 1, 1, 6, Harmonic::One).unwrap();
        assert_eq!(f.denominator(), 3);
        assert_eq!(f.constant_term(), int(1));
        assert_eq!(f.coefficient_at(&key(1, &[2])).unwrap(), int(6));
        assert!(mixed_theta(&a2, 1, 2, 6, Harmonic::One).is_err());
        assert!(mixed_theta(&e8_gram(), 1, 1, 2, Harmonic::One).is_err());
    }

    #[test]
    fn cusp_prefactors() {
        let a2 = GramMatrix::new(2, alloc::vec![2, 1, 1, 2]).unwrap();
        let a2a2 = a2.orthogonal_sum(&a2);
        for j in 0..=2 {
            let f = slash_cusp(&a2a2, 2, j, 2, Harmonic::One).unwrap();
            assert_eq!(f.prefactor(), PadicValue::from_integer(-(j as i64)));
        }
        let g = slash_cusp(&a2, 1, 1, 4, Harmonic::One).unwrap();
        assert_eq!(g.prefactor(), PadicValue::from_halves(-1));
        assert!(g.prefactor().is_half_integral());
    }
}
