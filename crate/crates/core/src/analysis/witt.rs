use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exactmath::{is_prime, legendre, require_odd_prime, Place};
use crate::lattice::{a_root_lattice, hasse_witt, relevant_places, GramMatrix};
use crate::{Error, Result};

/// Local invariants of `V = q·S ⊥ A_{p−1}` for `det S = p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittReport {
    pub p: u64,
    pub q: u64,
    pub s_q: i8,
    /// `((−p)/q)`.
    pub expected_s_q: i8,
    pub s_p: i8,
    pub s_2: i8,
    pub s_infinity: i8,
    /// `s_p` recovered from all other places via the product formula.
    pub predicted_s_p: i8,
    /// `(place, s_v)` for every place where `V` can be non-split.
    pub places: Vec<(Place, i8)>,
    /// When `((−p)/q) = −1`: whether `s_p = −1` as well.
    pub s_p_negative: Option<bool>,
}

impl WittReport {
    pub fn holds(&self) -> bool {
        self.s_q == self.expected_s_q
            && self.predicted_s_p == self.s_p
            && self.s_infinity == 1
            && self.s_p_negative != Some(false)
    }
}

/// Checks `s_q(q·S ⊥ A_{p−1}) = ((−p)/q)` and the product formula.
pub fn witt_identity_check(s: &GramMatrix, p: u64, q: u64) -> Result<WittReport> {
    require_odd_prime(p)?;
    require_odd_prime(q)?;
    if p == q {
        return Err(Error::ContractViolation("auxiliary prime q must differ from p".into()));
    }
    if s.determinant() != BigInt::from(p) || !s.size().is_multiple_of(2) {
        return Err(Error::ContractViolation(alloc::format!(
            "need even rank and det S = {p}, got rank {} and det {}",
            s.size(),
            s.determinant()
        )));
    }
    let (l, _) = a_root_lattice(p)?;
    let v = s.scaled(q as i64)?.orthogonal_sum(&l);
    let mut places = relevant_places(&v)?;
    for extra in [Place::Prime(p), Place::Prime(q)] {
        if !places.contains(&extra) {
            places.push(extra);
        }
    }
    let values = places
        .iter()
        .map(|&place| Ok((place, hasse_witt(&v, place)?)))
        .collect::<Result<Vec<_>>>()?;
    let at = |place: Place| values.iter().find(|(w, _)| *w == place).map(|(_, s)| *s).unwrap_or(1);
    let s_p = at(Place::Prime(p));
    let s_q = at(Place::Prime(q));
    let predicted_s_p = values.iter().filter(|(w, _)| *w != Place::Prime(p)).map(|(_, s)| *s).product();
    let expected_s_q = legendre(&-BigInt::from(p), q)?;
    Ok(WittReport {
        p,
        q,
        s_q,
        expected_s_q,
        s_p,
        s_2: at(Place::Prime(2)),
        s_infinity: at(Place::Infinity),
        predicted_s_p,
        places: values,
        s_p_negative: (expected_s_q == -1).then_some(s_p == -1),
    })
}

/// Smallest odd prime `q ≠ p` below `limit` with `((−p)/q) = −1`.
pub fn nonresidue_prime(p: u64, limit: u64) -> Option<u64> {
    (3..limit)
        .filter(|&q| q != p && is_prime(q))
        .find(|&q| legendre(&-BigInt::from(p), q) == Ok(-1))
}
