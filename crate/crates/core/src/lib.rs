//! Tracy–Widom limit laws and their finite-n corrections for the Gaussian
//! unitary and orthogonal ensembles.
//!
//! The crate is layered bottom-up:
//!
//! * [`specfun`]: Airy pair, Hermite functions, the constant `c_phi`.
//! * [`fredholm`]: Nyström discretization of the Airy and Hermite kernels,
//!   determinants and the resolvent inner products.
//! * [`limits`]: tabulated limit-law functions (`mu`, `nu`, `alpha`, `eta`,
//!   the correction coefficients) plus an independent Painlevé II solver.
//! * [`edgeworth`]: assembly of the GUE and GOE finite-n expansions.
//! * [`finite_n`]: the exact finite-n GOE pipeline.
//! * [`mc_harness`]: Monte Carlo sampling of largest eigenvalues.

mod dd;
pub mod edgeworth;
pub mod error;
pub mod finite_n;
pub mod fredholm;
pub mod limits;
pub mod mc_harness;
pub mod ode;
pub mod output;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
