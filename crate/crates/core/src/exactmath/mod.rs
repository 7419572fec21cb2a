//! Exact integer and rational arithmetic: primes, residue symbols, `p`-adic
//! valuations and linear algebra over `F_p`.

mod fp;
mod primes;
mod symbols;
mod valuation;

pub use fp::{fp_rank, FpMatrix};
pub use primes::{is_prime, mod_inverse, mod_pow, prime_divisors, require_odd_prime};
pub use symbols::{chi_p, hilbert_symbol, legendre, Place};
pub use valuation::{split_p_power, valuation, valuation_int, PadicValue};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `p^e` as a rational, for any integer `e`.
pub fn rational_pow(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Reduces a `p`-integral rational to its residue in `[0, p)`.
///
/// Returns `None` when the denominator is divisible by `p`.
pub fn residue_mod_p(x: &BigRational, p: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let pb = BigInt::from(p);
    let den = x.denom() % &pb;
    if den.is_zero() {
        return None;
    }
    let num = to_residue(x.numer(), p);
    let den = to_residue(x.denom(), p);
    Some(((num as u128 * mod_inverse(den, p) as u128) % p as u128) as u64)
}

/// Residue of a big integer in `[0, p)`.
pub fn to_residue(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut r = x % &pb;
    if r < BigInt::zero() {
        r += &pb;
    }
    // r < p fits
    r.try_into().expect("residue fits in u64")
}
