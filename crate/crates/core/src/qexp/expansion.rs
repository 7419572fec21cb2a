use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::{rational_pow, residue_mod_p, valuation, PadicValue};
use crate::lattice::{HalfIntegralMatrix, IntMatrix};
use crate::{Error, Result};

/// A Fourier index stored as the integer matrix `2d·T`.
///
/// Keys order by trace first and then lexicographically on the entries,
/// which is the canonical order of every serialized expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexKey {
    trace: i64,
    scaled: IntMatrix,
}

impl IndexKey {
    pub fn new(scaled: IntMatrix) -> Result<Self> {
        if scaled.rows() != scaled.cols() || !scaled.is_symmetric() {
            return Err(Error::InvalidMatrix("index must be square and symmetric".into()));
        }
        let trace = (0..scaled.rows()).map(|i| scaled.get(i, i)).sum();
        Ok(IndexKey { trace, scaled })
    }

    pub fn from_half_integral(t: &HalfIntegralMatrix) -> Self {
        IndexKey::new(t.twice().clone()).expect("half-integral matrices are symmetric")
    }

    pub fn zero(n: usize) -> Self {
        IndexKey { trace: 0, scaled: IntMatrix::zeros(n, n) }
    }

    pub fn size(&self) -> usize {
        self.scaled.rows()
    }

    /// The integer matrix `2d·T`.
    pub fn scaled(&self) -> &IntMatrix {
        &self.scaled
    }

    /// Trace of `2d·T`.
    pub fn scaled_trace(&self) -> i64 {
        self.trace
    }

    pub fn is_zero(&self) -> bool {
        self.scaled.data().iter().all(|&x| x == 0)
    }

    /// `T` itself, for expansions with denominator `d`.
    pub fn rational_entries(&self, denominator: u64) -> Vec<BigRational> {
        let den = BigInt::from(2 * denominator);
        self.scaled
            .data()
            .iter()
            .map(|&x| BigRational::new(x.into(), den.clone()))
            .collect()
    }

    /// `T` as a half-integral matrix; only meaningful for denominator `1`.
    pub fn half_integral(&self) -> HalfIntegralMatrix {
        HalfIntegralMatrix::from_twice(self.size(), self.scaled.data().to_vec())
            .expect("denominator-1 keys are half-integral")
    }

    fn scale(&self, k: i64) -> Self {
        let data = self.scaled.data().iter().map(|&x| x * k).collect();
        IndexKey {
            trace: self.trace * k,
            scaled: IntMatrix::new(self.size(), self.size(), data).expect("square"),
        }
    }

    /// Human-readable `2dT` as nested rows, e.g. `[[2,1],[1,12]]`.
    pub fn describe(&self) -> String {
        let n = self.size();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let row: Vec<String> = (0..n).map(|j| format!("{}", self.scaled.get(i, j))).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl fmt::Display for IndexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Bookkeeping for an expansion at the cusp `ω_j`: the prime, the step `j`
/// and the data the unit `γ_p^j·det(L)^{−j/2}·p^{jν/2}` depends on. The unit is
/// never evaluated; expansions with different tags cannot be added.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspTag {
    pub prime: u64,
    pub step: usize,
    /// `det(L)` with all factors of `p` removed.
    pub det_unit: BigInt,
    pub odd_det_exponent: bool,
}

/// A truncated Fourier expansion `Σ a(T) e^{2πi tr(TZ)}` times `p^{e/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    degree: usize,
    bound: u64,
    denominator: u64,
    prefactor: PadicValue,
    cusp: Option<CuspTag>,
    coeffs: BTreeMap<IndexKey, BigRational>,
}

impl QExpansion {
    /// Builds an expansion, dropping zero coefficients and rejecting indices
    /// of the wrong size or beyond the bound.
    pub fn new(
        degree: usize,
        bound: u64,
        denominator: u64,
        coeffs: BTreeMap<IndexKey, BigRational>,
    ) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroArgument);
        }
        let limit = 2 * denominator as i64 * bound as i64;
        let mut clean = BTreeMap::new();
        for (k, v) in coeffs {
            if k.size() != degree {
                return Err(Error::ShapeMismatch(format!(
                    "index of size {} in degree {degree}",
                    k.size()
                )));
            }
            if k.trace > limit {
                return Err(Error::OutOfRange { what: "index trace", value: k.trace });
            }
            if !v.is_zero() {
                clean.insert(k, v);
            }
        }
        Ok(QExpansion {
            degree,
            bound,
            denominator,
            prefactor: PadicValue::ZERO,
            cusp: None,
            coeffs: clean,
        })
    }

    /// The constant series `c`.
    pub fn constant(degree: usize, bound: u64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(IndexKey::zero(degree), c);
        QExpansion::new(degree, bound, 1, coeffs).expect("constant series is well formed")
    }

    pub fn with_prefactor(mut self, prefactor: PadicValue) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn with_cusp(mut self, cusp: Option<CuspTag>) -> Self {
        self.cusp = cusp;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Exponent `e` of the overall factor `p^{e/2}` (stored in halves).
    pub fn prefactor(&self) -> PadicValue {
        self.prefactor
    }

    pub fn cusp(&self) -> Option<&CuspTag> {
        self.cusp.as_ref()
    }

    /// Nonzero coefficients in canonical order.
    pub fn coefficients(&self) -> &BTreeMap<IndexKey, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn covers(&self, key: &IndexKey) -> bool {
        key.trace <= 2 * self.denominator as i64 * self.bound as i64
    }

    /// Coefficient at a stored-form key; fails beyond the bound.
    pub fn coefficient_at(&self, key: &IndexKey) -> Result<BigRational> {
        if key.size() != self.degree {
            return Err(Error::ShapeMismatch(format!("index of size {}", key.size())));
        }
        if !self.covers(key) {
            return Err(Error::BoundInsufficient {
                needed: (key.trace as u64).div_ceil(2 * self.denominator),
                available: self.bound,
            });
        }
        Ok(self.coeffs.get(key).cloned().unwrap_or_else(BigRational::zero))
    }

    /// `a(T)` for a half-integral `T`; the expansion must have denominator 1.
    pub fn coefficient(&self, t: &HalfIntegralMatrix) -> Result<BigRational> {
        if self.denominator != 1 {
            return Err(Error::ShapeMismatch(format!(
                "half-integral lookup in an expansion with denominator {}",
                self.denominator
            )));
        }
        self.coefficient_at(&IndexKey::from_half_integral(t))
    }

    /// The constant term `a(0)`.
    pub fn constant_term(&self) -> BigRational {
        self.coeffs.get(&IndexKey::zero(self.degree)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
        } else {
            for v in out.coeffs.values_mut() {
                *v *= c;
            }
        }
        out
    }
}

/// Restricts `f` to indices with `tr(T) ≤ bound`.
pub fn truncate(f: &QExpansion, bound: u64) -> Result<QExpansion> {
    if bound > f.bound {
        return Err(Error::BoundInsufficient { needed: bound, available: f.bound });
    }
    let limit = 2 * f.denominator as i64 * bound as i64;
    let mut out = f.clone();
    out.bound = bound;
    out.coeffs.retain(|k, _| k.trace <= limit);
    Ok(out)
}

/// `Σ c_i f_i` on the smallest common bound.
///
/// Prefactors `p^{e_i/2}` are aligned to the smallest exponent, which needs
/// all `e_i` of the same parity. Cusp expansions combine only when their
/// tags agree.
pub fn linear_combination(coeffs: &[BigRational], series: &[QExpansion]) -> Result<QExpansion> {
    if coeffs.len() != series.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} coefficients for {} series",
            coeffs.len(),
            series.len()
        )));
    }
    let first = series.first().ok_or(Error::ZeroArgument)?;
    for f in series {
        if f.degree != first.degree || f.denominator != first.denominator {
            return Err(Error::ShapeMismatch(format!(
                "degree/denominator ({}, {}) vs ({}, {})",
                f.degree, f.denominator, first.degree, first.denominator
            )));
        }
        if f.cusp != first.cusp {
            return Err(Error::IncompatibleUnits);
        }
    }
    let bound = series.iter().map(|f| f.bound).min().expect("nonempty");
    let base = series.iter().map(|f| f.prefactor).min().expect("nonempty");
    let base_halves = base.halves().ok_or(Error::ContractViolation("infinite prefactor".into()))?;
    let mut acc: BTreeMap<IndexKey, BigRational> = BTreeMap::new();
    for (c, f) in coeffs.iter().zip(series) {
        let diff = f.prefactor.halves().expect("finite prefactor") - base_halves;
        if diff % 2 != 0 {
            return Err(Error::HalfIntegralPrefactor);
        }
        let factor = if diff == 0 {
            c.clone()
        } else {
            let p = f.cusp.as_ref().map(|t| t.prime).ok_or_else(|| {
                Error::ContractViolation("prefactors differ but no prime is attached".into())
            })?;
            c * rational_pow(p, diff / 2)
        };
        if factor.is_zero() {
            continue;
        }
        let truncated = truncate(f, bound)?;
        for (k, v) in truncated.coeffs {
            let entry = acc.entry(k).or_insert_with(BigRational::zero);
            *entry += &factor * v;
        }
    }
    Ok(QExpansion::new(first.degree, bound, first.denominator, acc)?
        .with_prefactor(base)
        .with_cusp(first.cusp.clone()))
}

/// `ν_p` of an expansion, valid for the coefficients up to `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedValuation {
    pub value: PadicValue,
    pub bound: u64,
}

impl BoundedValuation {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

/// `ν_p(f) = min_T ν_p(a(T))` plus the prefactor exponent, over stored
/// coefficients. Identically zero input yields `+∞`.
pub fn nu_p(f: &QExpansion, p: u64) -> BoundedValuation {
    let min = f
        .coeffs
        .values()
        .map(|v| valuation(v, p))
        .min()
        .unwrap_or(PadicValue::INFINITY);
    BoundedValuation { value: min + f.prefactor, bound: f.bound }
}

/// An expansion with coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueExpansion {
    pub degree: usize,
    pub bound: u64,
    pub denominator: u64,
    pub prime: u64,
    /// Nonzero residues only.
    pub coeffs: BTreeMap<IndexKey, u64>,
}

impl ResidueExpansion {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, key: &IndexKey) -> u64 {
        self.coeffs.get(key).copied().unwrap_or(0)
    }

    /// `F(pZ)` reduced mod `p`; see [`dilate`].
    pub fn dilate(&self, factor: u64) -> ResidueExpansion {
        ResidueExpansion {
            degree: self.degree,
            bound: self.bound * factor,
            denominator: self.denominator,
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|(k, &v)| (k.scale(factor as i64), v)).collect(),
        }
    }
}

/// Coefficientwise reduction mod `p` of `p^{e/2}·Σ a(T)q^T`.
///
/// The prefactor must be an integer power; every coefficient times it must
/// be `p`-integral, else the offending index is reported.
pub fn reduce_mod_p(f: &QExpansion, p: u64) -> Result<ResidueExpansion> {
    let e = f.prefactor.as_integer().ok_or(Error::HalfIntegralPrefactor)?;
    let scale = rational_pow(p, e);
    let mut coeffs = BTreeMap::new();
    for (k, v) in &f.coeffs {
        let value = v * &scale;
        let r = residue_mod_p(&value, p).ok_or_else(|| Error::NotIntegral { index: k.describe() })?;
        if r != 0 {
            coeffs.insert(k.clone(), r);
        }
    }
    Ok(ResidueExpansion {
        degree: f.degree,
        bound: f.bound,
        denominator: f.denominator,
        prime: p,
        coeffs,
    })
}

/// `F(pZ)`: the coefficient at `T` is `a(T/p)` when `T/p` is an index and
/// zero otherwise. The result is exact up to trace `p·B`.
pub fn dilate(f: &QExpansion, p: u64) -> QExpansion {
    let mut out = f.clone();
    out.bound = f.bound * p;
    out.coeffs = f.coeffs.iter().map(|(k, v)| (k.scale(p as i64), v.clone())).collect();
    out
}

impl QExpansion {
    /// Expansion `1 + 0·q + ⋯` with the shape of `self`.
    pub fn one_like(&self) -> QExpansion {
        let mut out = QExpansion::constant(self.degree, self.bound, BigRational::one());
        out.denominator = self.denominator;
        out
    }
}
