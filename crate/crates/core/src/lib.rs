//! Discretizations of regular Sturm-Liouville eigenvalue problems (central
//! finite differences of arbitrary order and B-spline Galerkin), their
//! spectral symbols and monotone rearrangements, and error measures comparing
//! discrete and continuous spectra.

pub mod analysis;
pub mod eig;
pub mod error;
pub mod fd;
pub mod grids;
pub mod iga;
pub mod io;
pub mod matrix;
pub mod problems;
pub mod quad;
pub mod symbol;

pub use error::{Error, Result};
