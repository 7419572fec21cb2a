use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exactmath::{fp_rank, require_odd_prime, FpMatrix};
use crate::{Error, Result};

/// `d(j) = [GL(n, F_p) : P_{n,j}(F_p)]` with its residue mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetIndex {
    pub value: BigInt,
    pub congruent_one: bool,
}

/// Number of `j`-dimensional subspaces of `F_p^n`, which is the index of the
/// parabolic `P_{n,j}` (lower-left `(n−j)×j` block zero) in `GL(n, F_p)`.
pub fn coset_index_d(n: usize, j: usize, p: u64) -> Result<CosetIndex> {
    if j > n {
        return Err(Error::OutOfRange { what: "j", value: j as i64 });
    }
    let pb = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=j {
        num *= pb.pow((n - j + i) as u32) - 1u32;
        den *= pb.pow(i as u32) - 1u32;
    }
    let value = num / den;
    let congruent_one = value.mod_floor(&pb) == BigInt::one() % &pb;
    Ok(CosetIndex { value, congruent_one })
}

/// The closed product `∏_{i=1}^j (p^{j+i} − 1)/(p^i − 1)`, which is the
/// index above for `n = 2j`.
pub fn displayed_coset_product(j: usize, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 1..=j {
        num *= pb.pow((j + i) as u32) - 1u32;
        den *= pb.pow(i as u32) - 1u32;
    }
    num / den
}

/// `(#GL(n, F_p), #P_{n,j}(F_p))` by enumerating all `n×n` matrices.
/// Guarded to `p^{n²} ≤ 2^22`.
pub fn coset_index_brute_force(n: usize, j: usize, p: u64) -> Result<(u64, u64)> {
    require_odd_prime(p)?;
    if j > n {
        return Err(Error::OutOfRange { what: "j", value: j as i64 });
    }
    let cells = (n * n) as u32;
    let total = p.checked_pow(cells).filter(|&t| t <= 1 << 22).ok_or_else(|| {
        Error::GuardExceeded(alloc::format!("{p}^{cells} matrices"))
    })?;
    let (mut gl, mut parabolic) = (0u64, 0u64);
    let mut entries: Vec<i64> = alloc::vec![0; n * n];
    for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % p) as i64;
            c /= p;
        }
        let m = FpMatrix::from_i64(p, n, n, &entries)?;
        if fp_rank(&m) != n {
            continue;
        }
        gl += 1;
        let lower_left_zero = (j..n).all(|r| (0..j).all(|col| entries[r * n + col] == 0));
        if lower_left_zero {
            parabolic += 1;
        }
    }
    Ok((gl, parabolic))
}
