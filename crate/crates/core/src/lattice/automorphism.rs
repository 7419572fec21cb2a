use alloc::vec::Vec;

use num_traits::Signed;

use super::enumerate::enumerate_vectors;
use super::gram::GramMatrix;
use super::matrix::IntMatrix;
use crate::{Error, Result};

/// Largest rank accepted by [`automorphisms`].
pub const AUTOMORPHISM_RANK_GUARD: usize = 12;
/// Largest group order materialized by [`automorphisms`].
pub const AUTOMORPHISM_ORDER_GUARD: usize = 1 << 20;

/// The integral automorphism group `{U : S[U] = S}` of a lattice.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub elements: Vec<IntMatrix>,
    pub proper_order: usize,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Whether some automorphism has determinant `−1`.
    pub fn has_improper(&self) -> bool {
        self.proper_order < self.elements.len()
    }
}

/// All automorphisms of `S`, found by assigning to each basis vector a
/// lattice vector of the same norm and pruning on inner products.
pub fn automorphisms(s: &GramMatrix) -> Result<AutomorphismGroup> {
    let m = s.size();
    if m > AUTOMORPHISM_RANK_GUARD {
        return Err(Error::GuardExceeded(alloc::format!(
            "automorphism search on rank {m} > {AUTOMORPHISM_RANK_GUARD}"
        )));
    }
    let max_norm = (0..m).map(|i| s.entry(i, i)).max().unwrap_or(0);
    let short = enumerate_vectors(s, max_norm);
    let candidates: Vec<Vec<&Vec<i64>>> = (0..m)
        .map(|i| short.iter().filter(|v| v.norm == s.entry(i, i)).map(|v| &v.coords).collect())
        .collect();
    let mut chosen: Vec<&Vec<i64>> = Vec::with_capacity(m);
    let mut elements = Vec::new();
    search(s, &candidates, &mut chosen, &mut elements)?;
    let proper_order = elements.iter().filter(|u| u.det().is_positive()).count();
    Ok(AutomorphismGroup { elements, proper_order })
}

fn search<'a>(
    s: &GramMatrix,
    candidates: &'a [Vec<&'a Vec<i64>>],
    chosen: &mut Vec<&'a Vec<i64>>,
    out: &mut Vec<IntMatrix>,
) -> Result<()> {
    let i = chosen.len();
    if i == candidates.len() {
        let cols: Vec<Vec<i64>> = chosen.iter().map(|c| (*c).clone()).collect();
        out.push(IntMatrix::from_columns(&cols));
        if out.len() > AUTOMORPHISM_ORDER_GUARD {
            return Err(Error::GuardExceeded("automorphism group too large".into()));
        }
        return Ok(());
    }
    for &cand in &candidates[i] {
        if (0..i).all(|j| s.inner(chosen[j], cand) == s.entry(j, i)) {
            chosen.push(cand);
            search(s, candidates, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::gram::a_n_gram;

    #[test]
    fn examples() {
        let g = automorphisms(&a_n_gram(1)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(automorphisms(&a_n_gram(2)).unwrap().order(), 12);
        let s = GramMatrix::new(2, alloc::vec![4, 1, 1, 6]).unwrap();
        let g = automorphisms(&s).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.has_improper());
        assert_eq!(automorphisms(&a_n_gram(4)).unwrap().order(), 240);
    }

    #[test]
    fn every_element_preserves_the_form() {
        let s = GramMatrix::new(2, alloc::vec![2, 1, 1, 12]).unwrap();
        let g = automorphisms(&s).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.has_improper());
        for u in &g.elements {
            assert_eq!(s.matrix().congruent(u).unwrap(), *s.matrix());
        }
    }
}
