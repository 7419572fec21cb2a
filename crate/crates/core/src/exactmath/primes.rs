use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

/// Deterministic Miller–Rabin for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Distinct prime divisors of `|n|` in increasing order, by trial division.
///
/// Intended for the small integers arising from Gram matrices and test data.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut q: u64 = 2;
    loop {
        let qb = BigInt::from(q);
        if &qb * &qb > n {
            break;
        }
        if n.is_multiple_of(&qb) {
            out.push(q);
            while n.is_multiple_of(&qb) {
                n /= &qb;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let last: u64 = (&n).try_into().expect("prime factor exceeds u64");
        out.push(last);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let brute = |n: u64| n >= 2 && (2..n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), brute(n), "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn odd_prime_guard() {
        assert!(require_odd_prime(23).is_ok());
        assert_eq!(require_odd_prime(2), Err(Error::NotOddPrime(2)));
        assert_eq!(require_odd_prime(9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn divisors() {
        assert_eq!(prime_divisors(&BigInt::from(-360)), [2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(23 * 23 * 47)), [23, 47]);
        assert!(prime_divisors(&BigInt::one()).is_empty());
    }
}
