//! The theta operators `Θ^[r]`, acting on Fourier coefficients by
//! `a(T) ↦ T^[r]·a(T)`, and certificates for `Θ^[r](F) ≡ 0 (mod p)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactmath::{valuation, PadicValue};
use crate::lattice::{automorphisms, combinations, minors_matrix, minors_of, GramMatrix, HalfIntegralMatrix};
use crate::qexp::{nu_p, theta_expansion, truncate, IndexKey, QExpansion};
use crate::{Error, Result};

/// `Σ_T T^[r] a(T) e^{2πi tr(TZ)}`; coefficients are row-major
/// `C(n,r) × C(n,r)` matrices, zero matrices omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorValuedExpansion {
    pub degree: usize,
    pub r: usize,
    pub bound: u64,
    pub prefactor: PadicValue,
    pub coeffs: BTreeMap<IndexKey, Vec<BigRational>>,
}

impl VectorValuedExpansion {
    /// Side length `C(n, r)` of each coefficient matrix.
    pub fn side(&self) -> usize {
        combinations(self.degree, self.r).len()
    }

    pub fn coefficient_at(&self, key: &IndexKey) -> Vec<BigRational> {
        let side = self.side();
        self.coeffs.get(key).cloned().unwrap_or_else(|| alloc::vec![BigRational::zero(); side * side])
    }
}

fn check_r(f: &QExpansion, r: usize) -> Result<()> {
    if r == 0 || r > f.degree() {
        return Err(Error::OutOfRange { what: "minor size r", value: r as i64 });
    }
    if f.denominator() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "theta operator on an expansion with denominator {}",
            f.denominator()
        )));
    }
    Ok(())
}

pub fn theta_operator(f: &QExpansion, r: usize) -> Result<VectorValuedExpansion> {
    check_r(f, r)?;
    let mut coeffs = BTreeMap::new();
    for (k, a) in f.coefficients() {
        let minors = minors_of(&k.rational_entries(1), f.degree(), r)?;
        if minors.iter().all(Zero::is_zero) {
            continue;
        }
        coeffs.insert(k.clone(), minors.into_iter().map(|m| m * a).collect());
    }
    Ok(VectorValuedExpansion { degree: f.degree(), r, bound: f.bound(), prefactor: f.prefactor(), coeffs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// The first coefficient entry of `Θ^[r](F)` that is not `≡ 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelWitness {
    pub index: IndexKey,
    /// Row and column of the entry, i.e. positions of `r`-subsets.
    pub entry: (usize, usize),
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCertificate {
    pub r: usize,
    pub p: u64,
    pub bound: u64,
    pub verdict: Verdict,
    pub witness: Option<KernelWitness>,
    pub nonzero_mod_p: bool,
}

/// Checks `F ≢ 0` and `Θ^[r](F) ≡ 0 (mod p)` on all indices with `tr(T) ≤ B`,
/// with congruence meaning `ν_p(Θ^[r]F) ≥ 1 + ν_p(F)`.
///
/// `F` must be `p`-integral. A failure carries the first offending entry
/// in canonical index order.
pub fn kernel_check(f: &QExpansion, r: usize, p: u64, bound: u64) -> Result<KernelCertificate> {
    check_r(f, r)?;
    let f = truncate(f, bound)?;
    let nu = nu_p(&f, p).value;
    if nu < PadicValue::ZERO {
        return Err(Error::NotIntegral { index: format!("valuation {nu}") });
    }
    let nonzero_mod_p = nu == PadicValue::ZERO;
    let threshold = nu.shift_halves(2);
    let op = theta_operator(&f, r)?;
    let side = op.side();
    let mut witness = None;
    'outer: for (k, m) in &op.coeffs {
        for (idx, v) in m.iter().enumerate() {
            if valuation(v, p) + f.prefactor() < threshold {
                witness = Some(KernelWitness { index: k.clone(), entry: (idx / side, idx % side), value: v.clone() });
                break 'outer;
            }
        }
    }
    let verdict = Verdict::from_bool(nonzero_mod_p && witness.is_none());
    Ok(KernelCertificate { r, p, bound, verdict, witness, nonzero_mod_p })
}

/// `true` unless `Θ^[r](F) ≡ 0` holds while `Θ^[r′](F) ≢ 0` for some `r′ > r`.
pub fn kernel_monotonicity_check(f: &QExpansion, r: usize, p: u64, bound: u64) -> Result<bool> {
    if !kernel_check(f, r, p, bound)?.verdict.is_pass() {
        return Ok(true);
    }
    for r2 in r + 1..=f.degree() {
        if !kernel_check(f, r2, p, bound)?.verdict.is_pass() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of scanning a `p`-integral expansion for mod-`p` singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularRank {
    /// Every coefficient up to the bound vanishes mod `p`.
    ZeroModP,
    /// Some coefficient of full rank `n` survives mod `p`.
    NotSingular,
    /// All surviving coefficients have `rank(T) ≤ l`, with equality attained.
    /// `weight_congruent` records `2k − l ≡ 0 (mod p−1)`.
    Singular { rank: usize, weight_congruent: bool },
}

fn rational_rank(mut a: Vec<BigRational>, n: usize) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&i| !a[i * n + col].is_zero()) else {
            continue;
        };
        for k in 0..n {
            a.swap(rank * n + k, piv * n + k);
        }
        for i in rank + 1..n {
            if a[i * n + col].is_zero() {
                continue;
            }
            let factor = &a[i * n + col] / &a[rank * n + col];
            for k in col..n {
                let sub = &factor * &a[rank * n + k];
                a[i * n + k] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// The smallest `l` such that every coefficient at an index of rank `> l`
/// vanishes mod `p` (within the bound), with the weight flag for weight `k`.
pub fn singular_rank_mod_p(f: &QExpansion, p: u64, bound: u64, weight: i64) -> Result<SingularRank> {
    let f = truncate(f, bound)?;
    let residues = crate::qexp::reduce_mod_p(&f, p)?;
    let Some(l) = residues
        .coeffs
        .keys()
        .map(|k| rational_rank(k.rational_entries(f.denominator()), k.size()))
        .max()
    else {
        return Ok(SingularRank::ZeroModP);
    };
    if l == f.degree() {
        return Ok(SingularRank::NotSingular);
    }
    let weight_congruent = (2 * weight - l as i64).rem_euclid(p as i64 - 1) == 0;
    Ok(SingularRank::Singular { rank: l, weight_congruent })
}

/// Outcome of comparing the coefficient of `Θ^[r](θ_{2S})` at `S` with
/// `#Aut(2S)·S^[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingCoefficientReport {
    pub automorphisms: usize,
    pub coefficient: Vec<BigRational>,
    pub matches: bool,
    /// `#Aut` is prime to `p` and `S^[r] ≢ 0 (mod p)`, so the coefficient
    /// must be nonzero mod `p`.
    pub nonvanishing_expected: bool,
    pub nonzero_mod_p: bool,
}

impl LeadingCoefficientReport {
    pub fn holds(&self) -> bool {
        self.matches && (!self.nonvanishing_expected || self.nonzero_mod_p)
    }
}

fn has_unit_entry(m: &[BigRational], p: u64) -> bool {
    m.iter().any(|v| !v.is_zero() && valuation(v, p) <= PadicValue::ZERO)
}

pub fn leading_coefficient_check(
    s: &HalfIntegralMatrix,
    r: usize,
    p: u64,
    bound: u64,
) -> Result<LeadingCoefficientReport> {
    let gram = GramMatrix::from_half_integral(s)?;
    let n = s.size();
    let needed = s.trace() as u64;
    if bound < needed {
        return Err(Error::BoundInsufficient { needed, available: bound });
    }
    let theta = theta_expansion(&gram, n, needed)?;
    let op = theta_operator(&theta, r)?;
    let coefficient = op.coefficient_at(&IndexKey::from_half_integral(s));
    let aut = automorphisms(&gram)?.order();
    let minors = minors_matrix(s, r)?;
    let aut_q = BigRational::from_integer(BigInt::from(aut));
    let expected: Vec<BigRational> = minors.iter().map(|m| m * &aut_q).collect();
    let nonvanishing_expected =
        BigInt::from(aut).gcd(&BigInt::from(p)).abs() == BigInt::from(1) && has_unit_entry(&minors, p);
    Ok(LeadingCoefficientReport {
        automorphisms: aut,
        matches: coefficient == expected,
        nonzero_mod_p: has_unit_entry(&coefficient, p),
        coefficient,
        nonvanishing_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqf::BinaryForm;
    use crate::lattice::a_n_gram;
    use crate::qexp::dilate;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn theta2(a: i64, b: i64, c: i64, bound: u64) -> QExpansion {
        theta_expansion(&BinaryForm::new(a, b, c).gram().unwrap(), 2, bound).unwrap()
    }

    #[test]
    fn operator_examples() {
        let t = theta_expansion(&a_n_gram(2), 1, 5).unwrap();
        let op = theta_operator(&t, 1).unwrap();
        let k = IndexKey::from_half_integral(&HalfIntegralMatrix::from_twice(1, alloc::vec![2]).unwrap());
        assert_eq!(op.coefficient_at(&k), [int(6)]);
        assert_eq!(op.coefficient_at(&IndexKey::zero(1)), [int(0)]);
        let f = theta2(1, 1, 6, 8);
        let op = theta_operator(&f, 2).unwrap();
        let s = IndexKey::from_half_integral(&HalfIntegralMatrix::binary(1, 1, 6));
        assert_eq!(op.coefficient_at(&s), [int(23)]);
        assert!(theta_operator(&f, 3).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = theta2(2, 1, 3, 8);
        assert!(kernel_check(&f, 2, 23, 8).unwrap().verdict.is_pass());
        let fail = kernel_check(&f, 1, 23, 8).unwrap();
        assert_eq!(fail.verdict, Verdict::Fail);
        assert!(fail.nonzero_mod_p && fail.witness.is_some());
        let d = dilate(&theta2(1, 1, 6, 1), 23);
        for r in 1..=2 {
            assert!(kernel_check(&d, r, 23, 23).unwrap().verdict.is_pass());
        }
        assert!(kernel_monotonicity_check(&f, 1, 23, 8).unwrap());
        assert!(kernel_monotonicity_check(&f, 2, 23, 8).unwrap());
    }

    #[test]
    fn singular_examples() {
        let f = theta2(2, 1, 3, 8);
        assert_eq!(singular_rank_mod_p(&f, 23, 8, 1).unwrap(), SingularRank::NotSingular);
        let one = QExpansion::constant(2, 8, int(1));
        assert!(matches!(singular_rank_mod_p(&one, 23, 8, 0).unwrap(), SingularRank::Singular { rank: 0, .. }));
        let zero = f.scale(&int(23));
        assert_eq!(singular_rank_mod_p(&zero, 23, 8, 1).unwrap(), SingularRank::ZeroModP);
    }

    #[test]
    fn leading_examples() {
        let r1 = leading_coefficient_check(&HalfIntegralMatrix::binary(2, 1, 3), 1, 23, 5).unwrap();
        assert!(r1.holds() && r1.nonvanishing_expected && r1.automorphisms == 2);
        let r0 = leading_coefficient_check(&HalfIntegralMatrix::binary(1, 1, 6), 1, 23, 7).unwrap();
        assert!(r0.holds() && r0.automorphisms == 4);
        let r2 = leading_coefficient_check(&HalfIntegralMatrix::binary(2, 1, 3), 2, 23, 5).unwrap();
        assert!(r2.holds() && !r2.nonvanishing_expected && !r2.nonzero_mod_p);
    }

    #[test]
    fn rank_over_q() {
        assert_eq!(rational_rank(alloc::vec![int(1), int(2), int(2), int(4)], 2), 1);
        assert_eq!(rational_rank(alloc::vec![int(0), int(1), int(1), int(0)], 2), 2);
    }
}
