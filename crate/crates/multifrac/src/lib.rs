//! Thermodynamic-formalism toolkit for finitely generated conformal
//! iterated function systems on the real line.
//!
//! The crate computes, with explicit error control:
//!
//! * topological pressure of combined potentials `t*phi + beta*psi`,
//!   by periodic partition sums with certified brackets and by transfer
//!   matrices for locally constant data,
//! * the pressure-equation curve `t(beta)` and its Legendre spectrum
//!   `f(alpha)`,
//! * Gibbs cylinder measures of Markov type and their distribution
//!   functions (devil's staircases), ball masses, and pointwise
//!   Hoelder exponents,
//! * coarse box-counting spectra as an independent cross-check of the
//!   pressure route,
//! * topological conjugacies between two expanding systems with the
//!   same branch count, evaluated as coding-map compositions.
//!
//! Everything is deterministic: no clocks, no global RNG, no
//! iteration-order dependence. Randomized sampling (where offered)
//! takes an explicit seed.

#![forbid(unsafe_code)]

pub mod conjugacy;
pub mod config;
pub mod distribution;
pub mod emit;
mod error;
pub mod ifs;
pub mod spectrum;
pub mod symbolic;
pub mod thermo;

pub use error::{Error, Result};
pub use ifs::{BranchMap, IfsDefinition, IfsSpec, ValidationReport};
pub use symbolic::{Alphabet, PotentialSpec, Word};
