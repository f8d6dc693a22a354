//! Exact computation of orbifold Milnor lattices of invertible polynomials
//! with diagonal symmetry groups: Seifert forms, monodromy, orbifold
//! intersection forms, zeta functions and E-functions.

pub mod arith;
pub mod catalog;
pub mod cyclo;
pub mod diagsym;
pub mod error;
pub mod fixtures;
pub mod groupring;
pub mod matrix;
pub mod milnor;
pub mod orblattice;
pub mod polyring;
pub mod rootlattice;
pub mod spectra;

pub use error::{Error, Result};
