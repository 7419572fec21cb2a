//! Exact arithmetic for theta series of even lattices and the theta operators
//! `Θ^[r]` modulo a prime.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`): integer and
//! rational arithmetic is exact, there is no floating point, and every
//! truncated statement about a Fourier expansion is stamped with the trace
//! bound it was verified up to. File formats, reports and the command line
//! live in the `theta-kernel` crate.
//!
//! Module map:
//!
//! * [`exactmath`] — primes, Legendre and Hilbert symbols, `p`-adic
//!   valuations with half-integer support, rank over `F_p`.
//! * [`lattice`] — Gram matrices, determinant and level, dual lattices,
//!   short-vector enumeration, maximality, Hasse–Witt invariants, minors,
//!   `p`-special lattices and automorphism groups.
//! * [`bqf`] — positive definite binary quadratic forms and their classes.
//! * [`qexp`] — truncated Fourier expansions: theta series, mixed theta
//!   series at the cusps, linear algebra, reduction mod `p`, dilation.
//! * [`thetaop`] — the theta operators and kernel certificates.
//! * [`analysis`] — Koecher–Maaß averages, `F_p`-dimensions of theta
//!   families, coset indices, local-invariant identities and congruences.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bqf;
mod error;
pub mod exactmath;
pub mod lattice;
pub mod qexp;
pub mod thetaop;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
