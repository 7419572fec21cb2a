use num_rational::BigRational;
use num_traits::One;

use crate::exactmath::valuation;
use crate::qexp::{linear_combination, nu_p, truncate, IndexKey, QExpansion};
use crate::thetaop::Verdict;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub verdict: Verdict,
    pub bound: u64,
    /// First index (canonical order) where `f − g` is too large.
    pub witness: Option<IndexKey>,
}

/// `f ≡ g (mod p)` in the normalized sense `ν_p(f − g) ≥ 1 + ν_p(f)`,
/// checked on all indices with `tr(T) ≤ B`.
pub fn congruence_check(f: &QExpansion, g: &QExpansion, p: u64, bound: u64) -> Result<CongruenceReport> {
    let f = truncate(f, bound)?;
    let g = truncate(g, bound)?;
    let diff = linear_combination(&[BigRational::one(), -BigRational::one()], &[f.clone(), g])?;
    let threshold = nu_p(&f, p).value.shift_halves(2);
    let witness = diff
        .coefficients()
        .iter()
        .find(|(_, v)| valuation(v, p) + diff.prefactor() < threshold)
        .map(|(k, _)| k.clone());
    Ok(CongruenceReport { verdict: Verdict::from_bool(witness.is_none()), bound, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bqf::BinaryForm;
    use crate::lattice::a_n_gram;
    use crate::qexp::theta_expansion;

    #[test]
    fn examples() {
        let a4 = theta_expansion(&a_n_gram(4), 1, 10).unwrap();
        assert!(congruence_check(&a4, &a4, 5, 10).unwrap().verdict.is_pass());
        let one = a4.one_like();
        assert!(congruence_check(&a4, &one, 5, 10).unwrap().verdict.is_pass());
        let t0 = theta_expansion(&BinaryForm::new(1, 1, 6).gram().unwrap(), 2, 6).unwrap();
        let t1 = theta_expansion(&BinaryForm::new(2, 1, 3).gram().unwrap(), 2, 6).unwrap();
        let r = congruence_check(&t0, &t1, 23, 6).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.unwrap();
        assert!(t0.coefficient_at(&w).unwrap() != t1.coefficient_at(&w).unwrap());
    }
}
