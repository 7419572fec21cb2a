use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::congruence::congruence_check;
use crate::exactmath::{require_odd_prime, PadicValue};
use crate::lattice::p_special_lattice;
use crate::qexp::{linear_combination, nu_p, slash_cusp, theta_expansion, Harmonic, IndexKey};
use crate::thetaop::Verdict;
use crate::{Error, Result};

/// `a_j = (−1)^j p^{(j²+j)/2}`.
pub fn erratum_coefficient(p: u64, j: usize) -> BigRational {
    let v = BigInt::from(p).pow((j * j + j) as u32 / 2);
    BigRational::from_integer(if j.is_multiple_of(2) { v } else { -v })
}

/// Doubled exponent of `p` in front of `a_j θ^n(L_j) | ω_i`, with
/// `det L_j = p^{2j+1}`: `−i(2j+1) + j² + j`.
pub fn cusp_exponent_halves(i: usize, j: usize) -> i64 {
    let (i, j) = (i as i64, j as i64);
    -i * (2 * j + 1) + j * j + j
}

/// `1 + j(j+1)/2 − 2j` for `j = 0..=n`: `1, 0, 0, 1, 3, …`.
pub fn trace_exponent_pattern(n: usize) -> Vec<i64> {
    (0..=n as i64).map(|j| 1 + j * (j + 1) / 2 - 2 * j).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspStep {
    pub i: usize,
    /// `ν_p(h | ω_i)` within the bound.
    pub valuation: PadicValue,
    /// `−i²/2 + 1`.
    pub required: PadicValue,
    /// The constant term of `(a_{i−1}θ(L_{i−1}) + a_iθ(L_i)) | ω_i` is zero,
    /// both as computed and by the closed exponent formula.
    pub constant_cancels: bool,
}

impl CuspStep {
    pub fn holds(&self) -> bool {
        self.constant_cancels && self.valuation >= self.required
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErratumReport {
    pub p: u64,
    pub n: usize,
    pub bound: u64,
    pub coefficients: Vec<BigRational>,
    pub h_congruent_one: bool,
    pub h_witness: Option<IndexKey>,
    pub steps: Vec<CuspStep>,
    pub verdict: Verdict,
}

/// Builds `h = Σ_{j≤n} a_j θ^n(L_j)` from `p`-special lattices with
/// `det L_j = p^{2j+1}` and checks `h ≡ 1 (mod p)` and
/// `ν_p(h | ω_i) ≥ −i²/2 + 1` for `1 ≤ i ≤ n`, up to the bound.
pub fn erratum_h_series(p: u64, n: usize, bound: u64) -> Result<ErratumReport> {
    require_odd_prime(p)?;
    if n == 0 || p < 2 * n as u64 + 3 {
        return Err(Error::ContractViolation(alloc::format!("need n ≥ 1 and p ≥ 2n+3, got p = {p}, n = {n}")));
    }
    let lattices = (0..=n)
        .map(|j| Ok(p_special_lattice(p, 2 * j as u64 + 1)?.0))
        .collect::<Result<Vec<_>>>()?;
    let coefficients: Vec<BigRational> = (0..=n).map(|j| erratum_coefficient(p, j)).collect();
    let thetas = lattices.iter().map(|l| theta_expansion(l, n, bound)).collect::<Result<Vec<_>>>()?;
    let h = linear_combination(&coefficients, &thetas)?;
    let congruence = congruence_check(&h, &h.one_like(), p, bound)?;
    let mut steps = Vec::with_capacity(n);
    for i in 1..=n {
        let cusp = lattices
            .iter()
            .map(|l| slash_cusp(l, n, i, bound, Harmonic::One))
            .collect::<Result<Vec<_>>>()?;
        let combined = linear_combination(&coefficients, &cusp)?;
        let pair = linear_combination(&coefficients[i - 1..=i], &cusp[i - 1..=i])?;
        // The two leading terms carry signs (−1)^{2i−1} and +1, so they cancel
        // exactly when their p-exponents agree.
        let closed_form = cusp_exponent_halves(i, i - 1) == cusp_exponent_halves(i, i);
        steps.push(CuspStep {
            i,
            valuation: nu_p(&combined, p).value,
            required: PadicValue::from_halves(2 - (i * i) as i64),
            constant_cancels: closed_form && pair.constant_term().is_zero(),
        });
    }
    let h_congruent_one = congruence.verdict.is_pass();
    let verdict = Verdict::from_bool(h_congruent_one && steps.iter().all(CuspStep::holds));
    Ok(ErratumReport {
        p,
        n,
        bound,
        coefficients,
        h_congruent_one,
        h_witness: congruence.witness,
        steps,
        verdict,
    })
}
