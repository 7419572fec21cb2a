//! Verifications that combine the other modules: Koecher–Maaß averages,
//! `F_p`-dimensions of theta families, the coset index `d(j)`, local
//! invariant identities, the level-`p` series `h` with `h ≡ 1 (mod p)`, and
//! congruences between expansions.

mod congruence;
mod coset;
mod dimension;
mod erratum;
mod km;
mod witt;

pub use congruence::{congruence_check, CongruenceReport};
pub use coset::{coset_index_brute_force, coset_index_d, displayed_coset_product, CosetIndex};
pub use dimension::{fp_dimension, fp_dimension_profile};
pub use erratum::{
    cusp_exponent_halves, erratum_coefficient, erratum_h_series, trace_exponent_pattern,
    CuspStep, ErratumReport,
};
pub use km::{
    km_average, km_class_table, km_divisibility_check, km_required_bound, km_vanishing_check,
    km_xsum_value, KmClass, KmReport,
};
pub use witt::{nonresidue_prime, witt_identity_check, WittReport};
