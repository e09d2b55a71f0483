//! Exact algebra for plane-curve covers of the projective line.
//!
//! The crate is organized bottom-up:
//!
//! - [`exact`]: rationals, dense univariate and sparse multivariate
//!   polynomials, resultants, square-free decomposition, rational roots.
//! - [`finite_field`]: prime fields, factorization over `F_p`, `F_8`.
//! - [`qfactor`]: factorization over `Q` (Zassenhaus with Hensel lifting).
//! - [`curve`]: the function field of a plane cubic monic in `f`.
//! - [`cover`]: fiber polynomials, branch loci and ramification profiles.
//! - [`involution`]: birational self-maps and modular relations.
//! - [`elliptic`]: Weierstrass reduction and isomorphism testing.
//! - [`galois`]: permutation-group oracle and Frobenius sampling.
//! - [`certificate`]: pass/fail records with exact witnesses.
//! - [`corpus`]: corpus files and the check runner.

pub mod certificate;
pub mod corpus;
pub mod cover;
pub mod curve;
pub mod elliptic;
mod error;
pub mod exact;
pub mod finite_field;
pub mod galois;
pub mod involution;
pub mod qfactor;
pub mod rng;

pub use error::{Error, Result};
