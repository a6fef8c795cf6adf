//! Bound states of singular central potentials by generalized
//! pseudospectral collocation.
//!
//! The radial interval `[0, r_max]` is mapped onto the Legendre–Gauss–Lobatto
//! nodes of `[-1, 1]`, the reduced radial Hamiltonian is collocated there as
//! a symmetric dense matrix, and its lowest eigenpairs are computed directly.
//!
//! ```
//! use std::sync::Arc;
//! use radial_gps::{solve, GridSpec, PotentialSpec, RadialGrid};
//!
//! let grid = Arc::new(RadialGrid::new(GridSpec::default()).unwrap());
//! let hydrogen: PotentialSpec = "coulomb Z=1 g=0 lambda=0".parse().unwrap();
//! let spectrum = solve(grid, &hydrogen, 0, 2).unwrap();
//! assert!((spectrum.states[1].energy + 0.125).abs() < 1e-10);
//! ```

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod collocation;
pub mod error;
pub mod mapping;
pub mod observables;
pub mod operator;
pub mod oracle;
pub mod potentials;
pub mod tables;

pub use collocation::CollocationSet;
pub use error::{Error, Result};
pub use mapping::{GridSpec, RadialGrid};
pub use observables::BoundState;
pub use operator::{assemble, eigen_lowest, solve, Spectrum, SymmetricOperator};
pub use potentials::{parse_potential, PotentialSpec};
