use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::exactmath::{fp_rank, FpMatrix};
use crate::qexp::{reduce_mod_p, truncate, IndexKey, QExpansion};
use crate::{Error, Result};

/// Rank over `F_p` of the coefficient vectors (indices with `tr(T) ≤ B`) of
/// a family of `p`-integral expansions.
pub fn fp_dimension(family: &[QExpansion], p: u64, bound: u64) -> Result<usize> {
    let Some(first) = family.first() else {
        return Ok(0);
    };
    for f in family {
        if f.degree() != first.degree() || f.denominator() != 1 {
            return Err(Error::ShapeMismatch(alloc::format!(
                "family mixes degree {} with degree {} / denominator {}",
                first.degree(),
                f.degree(),
                f.denominator()
            )));
        }
    }
    let reduced = family
        .iter()
        .map(|f| reduce_mod_p(&truncate(f, bound)?, p))
        .collect::<Result<Vec<_>>>()?;
    let support: BTreeSet<&IndexKey> = reduced.iter().flat_map(|r| r.coeffs.keys()).collect();
    let support: Vec<&IndexKey> = support.into_iter().collect();
    let mut m = FpMatrix::zeros(p, 0, support.len())?;
    for r in &reduced {
        let row: Vec<u64> = support.iter().map(|k| r.get(k)).collect();
        m.push_row(&row)?;
    }
    Ok(fp_rank(&m))
}

/// `fp_dimension` at every bound `1..=B`, to expose where the rank stabilizes.
pub fn fp_dimension_profile(family: &[QExpansion], p: u64, bound: u64) -> Result<Vec<(u64, usize)>> {
    (1..=bound).map(|b| Ok((b, fp_dimension(family, p, b)?))).collect()
}
