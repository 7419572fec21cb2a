use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bqf::{class_representatives, epsilon_plus};
use crate::exactmath::{residue_mod_p, valuation, PadicValue};
use crate::lattice::{GramMatrix, HalfIntegralMatrix};
use crate::qexp::{linear_combination, QExpansion};
use crate::thetaop::Verdict;
use crate::{Error, Result};

/// An `SL₂(Z)`-class of binary `T` with `det(2T) = d` and `ε⁺(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmClass {
    pub t: HalfIntegralMatrix,
    pub epsilon: usize,
}

/// Class data for every `d ≤ d_max` (entry `d` of the result; entry 0 empty).
/// `d` with `−d ≢ 0, 1 (mod 4)` has no classes.
pub fn km_class_table(d_max: u64) -> Result<Vec<Vec<KmClass>>> {
    let mut table = Vec::with_capacity(d_max as usize + 1);
    table.push(Vec::new());
    for d in 1..=d_max {
        let disc = -(d as i64);
        if !matches!(disc.rem_euclid(4), 0 | 1) {
            table.push(Vec::new());
            continue;
        }
        let classes = class_representatives(disc)?
            .into_iter()
            .map(|c| {
                let t = c.form.matrix();
                Ok(KmClass { epsilon: epsilon_plus(&t)?, t })
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(classes);
    }
    Ok(table)
}

/// The trace bound needed so that every class with `det(2T) ≤ d_max` has a
/// reduced representative inside it.
pub fn km_required_bound(d_max: u64) -> Result<u64> {
    let mut need = 0;
    for d in 1..=d_max {
        let disc = -(d as i64);
        if !matches!(disc.rem_euclid(4), 0 | 1) {
            continue;
        }
        for c in class_representatives(disc)? {
            need = need.max((c.form.a + c.form.c) as u64);
        }
    }
    Ok(need)
}

fn check_series(f: &QExpansion) -> Result<()> {
    if f.denominator() != 1 || f.prefactor() != PadicValue::ZERO {
        return Err(Error::ContractViolation(
            "Koecher–Maaß averages need a plain expansion (denominator 1, no prefactor)".into(),
        ));
    }
    Ok(())
}

fn average_over(f: &QExpansion, classes: &[KmClass]) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for c in classes {
        let a = f.coefficient(&c.t)?;
        if !a.is_zero() {
            sum += a / BigRational::from_integer(c.epsilon.into());
        }
    }
    Ok(sum)
}

/// `a_d(f) = Σ a(T)/ε⁺(T)` over `SL`-classes with `det(2T) = d`.
///
/// Degree 1 uses `det(2T) = 2t`. Fails when a class representative lies
/// beyond the stored bound.
pub fn km_average(f: &QExpansion, d: u64) -> Result<BigRational> {
    check_series(f)?;
    match f.degree() {
        1 => {
            if !d.is_multiple_of(2) {
                return Ok(BigRational::zero());
            }
            f.coefficient(&HalfIntegralMatrix::from_twice(1, alloc::vec![d as i64])?)
        }
        2 => {
            let disc = -(d as i64);
            if d == 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
                return Ok(BigRational::zero());
            }
            let classes = class_representatives(disc)?
                .into_iter()
                .map(|c| {
                    let t = c.form.matrix();
                    Ok(KmClass { epsilon: epsilon_plus(&t)?, t })
                })
                .collect::<Result<Vec<_>>>()?;
            average_over(f, &classes)
        }
        n => Err(Error::OutOfRange { what: "Koecher–Maaß degree", value: n as i64 }),
    }
}

/// `a_d(θ²_{2S})` from `det(2S)^{−s} Σ_X |det X|^{−2s}`: when
/// `d = det(2S)·m²` it is the number of right `SL₂(Z)`-orbits of integer
/// matrices with `|det X| = m`, counted by Hermite normal forms
/// `[[a, 0], [b, c]]` with `ac = m`, `0 ≤ b < c`, for each sign of `det X`.
pub fn km_xsum_value(s: &GramMatrix, d: u64) -> Result<BigRational> {
    if s.size() != 2 {
        return Err(Error::ShapeMismatch(alloc::format!("binary lattice expected, rank {}", s.size())));
    }
    let base: u64 = s
        .determinant()
        .try_into()
        .map_err(|_| Error::GuardExceeded("det(2S) beyond u64".into()))?;
    if !d.is_multiple_of(base) {
        return Ok(BigRational::zero());
    }
    let q = d / base;
    let m = q.isqrt();
    if m * m != q {
        return Ok(BigRational::zero());
    }
    let mut count = 0u64;
    for a in 1..=m {
        if !m.is_multiple_of(a) {
            continue;
        }
        let c = m / a;
        count += c;
    }
    Ok(BigRational::from_integer(BigInt::from(2 * count)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmReport {
    pub p: Option<u64>,
    pub d_max: u64,
    /// `Σ a_i ≡ 0 (mod p)` for the combination (always true for vanishing checks).
    pub precondition: bool,
    /// Nonzero averages `(d, a_d)`.
    pub values: Vec<(u64, BigRational)>,
    pub first_failure: Option<(u64, BigRational)>,
    pub verdict: Verdict,
}

/// For `f = Σ c_i θ_i` with `Σ c_i ≡ 0 (mod p)`, checks `ν_p(a_d(f)) ≥ 1`
/// for every `d ≤ d_max`.
pub fn km_divisibility_check(
    coeffs: &[BigRational],
    thetas: &[QExpansion],
    p: u64,
    d_max: u64,
    table: &[Vec<KmClass>],
) -> Result<KmReport> {
    let f = linear_combination(coeffs, thetas)?;
    check_series(&f)?;
    let total: BigRational = coeffs.iter().sum();
    let precondition = residue_mod_p(&total, p) == Some(0);
    let values = averages(&f, d_max, table)?;
    let first_failure =
        values.iter().find(|(_, v)| valuation(v, p) < PadicValue::from_integer(1)).cloned();
    let verdict = Verdict::from_bool(precondition && first_failure.is_none());
    Ok(KmReport { p: Some(p), d_max, precondition, values, first_failure, verdict })
}

/// Checks `a_d(f) = 0` exactly for every `d ≤ d_max`.
pub fn km_vanishing_check(f: &QExpansion, d_max: u64, table: &[Vec<KmClass>]) -> Result<KmReport> {
    check_series(f)?;
    let values = averages(f, d_max, table)?;
    let first_failure = values.first().cloned();
    Ok(KmReport {
        p: None,
        d_max,
        precondition: true,
        verdict: Verdict::from_bool(first_failure.is_none()),
        values,
        first_failure,
    })
}

fn averages(f: &QExpansion, d_max: u64, table: &[Vec<KmClass>]) -> Result<Vec<(u64, BigRational)>> {
    if f.degree() != 2 {
        return Err(Error::OutOfRange { what: "Koecher–Maaß degree", value: f.degree() as i64 });
    }
    if (table.len() as u64) <= d_max {
        return Err(Error::ContractViolation(alloc::format!(
            "class table covers d ≤ {}, need {d_max}",
            table.len().saturating_sub(1)
        )));
    }
    let mut out = Vec::new();
    for d in 1..=d_max {
        let v = average_over(f, &table[d as usize])?;
        if !v.is_zero() {
            out.push((d, v));
        }
    }
    Ok(out)
}
