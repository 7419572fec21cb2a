use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::primes::{is_prime, mod_pow, require_odd_prime};
use super::valuation::split_p_power;
use super::to_residue;
use crate::{Error, Result};

/// A place of `Q`: the real place or a prime (including 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let r = to_residue(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// The quadratic character `χ_p(m) = (p*/m)` with `p* = (-1)^((p-1)/2) p`.
///
/// `p*` is a fundamental discriminant, so the Kronecker symbol `(p*/·)` is the
/// character mod `p` given by `m ↦ (m/p)`; in particular it vanishes on
/// multiples of `p`.
pub fn chi_p(m: &BigInt, p: u64) -> Result<i8> {
    legendre(m, p)
}

/// Legendre symbol of a `p`-adic unit given as a rational.
fn unit_symbol(u: &BigRational, p: u64) -> i8 {
    let n = legendre(u.numer(), p).expect("odd prime checked");
    let d = legendre(u.denom(), p).expect("odd prime checked");
    n * d
}

/// Splits a nonzero rational as `p^k · u` with `u` a `p`-adic unit.
fn split_rational(x: &BigRational, p: u64) -> (i64, BigRational) {
    let (kn, un) = split_p_power(x.numer(), p);
    let (kd, ud) = split_p_power(x.denom(), p);
    (kn as i64 - kd as i64, BigRational::new(un, ud))
}

/// Residue mod 8 of a 2-adic unit `n/d` (using `1/d ≡ d mod 8` for odd `d`).
fn unit_mod8(u: &BigRational) -> u64 {
    let n = to_residue(u.numer(), 8);
    let d = to_residue(u.denom(), 8);
    (n * d) % 8
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
///
/// At an odd prime the tame formula `(-1)^{αβε(p)} (u/p)^β (w/p)^α` is used,
/// at `2` the formula `(-1)^{ε(u)ε(w) + α·ω(w) + β·ω(u)}` on the unit parts,
/// and at `∞` the symbol is `-1` exactly when both arguments are negative.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (alpha, u) = split_rational(a, 2);
            let (beta, w) = split_rational(b, 2);
            let (u, w) = (unit_mod8(&u), unit_mod8(&w));
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w)
                + (alpha.rem_euclid(2) as u64) * omega(w)
                + (beta.rem_euclid(2) as u64) * omega(u);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            let (alpha, u) = split_rational(a, p);
            let (beta, w) = split_rational(b, p);
            let mut s: i8 = 1;
            if (alpha * beta).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
                s = -s;
            }
            if beta.rem_euclid(2) == 1 {
                s *= unit_symbol(&u, p);
            }
            if alpha.rem_euclid(2) == 1 {
                s *= unit_symbol(&w, p);
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&1.into(), 7), Ok(1));
        assert_eq!(legendre(&0.into(), 7), Ok(0));
        assert_eq!(legendre(&2.into(), 5), Ok(-1));
        assert_eq!(legendre(&(-1).into(), 7), Ok(-1));
        assert_eq!(legendre(&2.into(), 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn legendre_matches_squares() {
        for p in [3u64, 5, 7, 11, 13, 23] {
            let squares: std::vec::Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(&BigInt::from(a), p).unwrap(), expected);
            }
        }
    }

    /// Jacobi symbol `(a/n)` for odd positive `n` by the reciprocity algorithm.
    fn jacobi(mut a: i64, mut n: i64) -> i8 {
        a = a.rem_euclid(n);
        let mut t = 1;
        while a != 0 {
            while a % 2 == 0 {
                a /= 2;
                if n % 8 == 3 || n % 8 == 5 {
                    t = -t;
                }
            }
            core::mem::swap(&mut a, &mut n);
            if a % 4 == 3 && n % 4 == 3 {
                t = -t;
            }
            a %= n;
        }
        if n == 1 { t } else { 0 }
    }

    #[test]
    fn chi_p_is_kronecker_of_p_star() {
        for p in [3i64, 5, 7, 11, 23, 31] {
            let p_star = if (p - 1) / 2 % 2 == 0 { p } else { -p };
            for m in (1..200i64).step_by(2) {
                if m % p == 0 {
                    continue;
                }
                assert_eq!(chi_p(&m.into(), p as u64).unwrap(), jacobi(p_star, m), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity), Ok(-1));
        for v in [Place::Infinity, Place::Prime(2), Place::Prime(5), Place::Prime(7)] {
            for b in [-7, -1, 2, 3, 10, 50] {
                assert_eq!(hilbert_symbol(&q(1), &q(b), v), Ok(1));
            }
        }
        assert_eq!(hilbert_symbol(&q(2), &q(5), Place::Prime(5)), Ok(-1));
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Prime(2)), Ok(-1));
        assert_eq!(hilbert_symbol(&q(0), &q(3), Place::Prime(3)), Err(Error::ZeroArgument));
    }

    /// Brute-force solubility of `a x² + b y² = z²` modulo `p^3` with a
    /// primitive solution, which decides `(a, b)_p` for odd `p` and small
    /// `p`-adic valuations of `a`, `b`.
    fn soluble_mod_p3(a: i64, b: i64, p: i64) -> bool {
        let m = p * p * p;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn hilbert_two_five_at_five_by_solubility() {
        assert!(!soluble_mod_p3(2, 5, 5));
        assert_eq!(hilbert_symbol(&q(2), &q(5), Place::Prime(5)), Ok(-1));
        assert!(soluble_mod_p3(1, 5, 5));
        assert_eq!(hilbert_symbol(&q(1), &q(5), Place::Prime(5)), Ok(1));
    }
}
