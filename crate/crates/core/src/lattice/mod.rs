//! Even integral lattices given by Gram matrices.

mod automorphism;
mod enumerate;
mod gram;
mod hasse;
mod matrix;
mod maximal;
mod minors;
mod special;

pub use automorphism::{automorphisms, AutomorphismGroup, AUTOMORPHISM_RANK_GUARD};
pub use enumerate::{
    enumerate_dual_vectors, enumerate_vectors, enumerate_vectors_guarded, LatticeVector, ENUMERATION_GUARD,
};
pub use gram::{
    a_n_gram, det_level, dual_gram, e8_gram, rank_mod_p, DualGram, GramMatrix,
    HalfIntegralMatrix,
};
pub use hasse::{hasse_witt, hasse_witt_of_diagonal, rational_diagonalization, relevant_places};
pub use matrix::{rational_det, rational_inverse, IntMatrix};
pub use maximal::is_p_maximal;
pub use minors::{combinations, minors_matrix, minors_of};
pub use special::{
    a_root_lattice, p_special_lattice, supported_special_exponents, IsometryCertificate,
};
