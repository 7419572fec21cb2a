//! Truncated Fourier expansions of Siegel modular forms.
//!
//! An expansion of degree `n` stores coefficients `a(T)` for index matrices
//! `T` with `tr(T) ≤ B`. Indices are kept as integer matrices `2d·T`, where
//! `d` is the declared denominator (`1` for ordinary theta series, the level
//! `p` for expansions at a cusp). Keys absent from the map have coefficient
//! zero; coefficients beyond the bound are unknown.

mod expansion;
mod theta;

pub use expansion::{
    dilate, linear_combination, nu_p, reduce_mod_p, truncate, BoundedValuation, CuspTag,
    IndexKey, QExpansion, ResidueExpansion,
};
pub use theta::{
    mixed_theta, slash_cusp, theta_det_expansion, theta_expansion, Harmonic,
};
