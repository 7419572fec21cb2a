use alloc::vec::Vec;

use super::gram::GramMatrix;
use crate::exactmath::{require_odd_prime, FpMatrix};
use crate::{Error, Result};

const MAX_RADICAL_DIM: usize = 12;

/// Whether the even lattice with Gram matrix `S` is maximal at `p`.
///
/// An even overlattice of index `p` is generated by some `y = v/p` with `v` in
/// the radical of `S mod p` (so that `B(y, L) ⊆ Z`) and `S[y] ∈ 2Z`. The
/// condition `S[v] ≡ 0 mod 2p²` only depends on `v mod p` and is invariant
/// under scaling by units, so one representative per line of the radical is
/// tested.
pub fn is_p_maximal(s: &GramMatrix, p: u64) -> Result<bool> {
    require_odd_prime(p)?;
    let m = s.size();
    let radical = FpMatrix::from_i64(p, m, m, s.matrix().data())?.kernel();
    let k = radical.len();
    if k == 0 {
        return Ok(true);
    }
    if k > MAX_RADICAL_DIM {
        return Err(Error::GuardExceeded(alloc::format!("radical of dimension {k} mod {p}")));
    }
    let modulus = 2 * (p as i128) * (p as i128);
    // lines: combinations whose first nonzero coefficient is 1
    let mut coeffs = alloc::vec![0u64; k];
    for lead in 0..k {
        coeffs.iter_mut().for_each(|c| *c = 0);
        coeffs[lead] = 1;
        loop {
            let v: Vec<i64> = (0..m)
                .map(|i| {
                    let x: u64 = (0..k).map(|b| coeffs[b] * radical[b][i]).sum::<u64>() % p;
                    x as i64
                })
                .collect();
            let norm = s.norm(&v) as i128;
            if norm.rem_euclid(modulus) == 0 {
                return Ok(false);
            }
            // odometer over the coefficients after `lead`
            let mut pos = lead + 1;
            loop {
                if pos == k {
                    break;
                }
                coeffs[pos] += 1;
                if coeffs[pos] < p {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    Ok(true)
}
