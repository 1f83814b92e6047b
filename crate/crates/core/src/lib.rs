//! Fourier analysis on SU(2): characters and representation matrices, Weyl and
//! Haar quadrature, Dirichlet kernels and partial sums, Hölder witnesses whose
//! partial sums diverge at a point, and the quantities in an almost-everywhere
//! convergence criterion.
//!
//! ```
//! use su2_fourier::fourier::{dirichlet_closed, dirichlet_direct};
//!
//! let theta = 0.8;
//! let diff = dirichlet_direct(12, theta) - dirichlet_closed(12, theta);
//! assert!(diff.abs() < 1e-9);
//! ```

pub mod cli;
pub mod convergence;
pub mod divergence;
pub mod error;
pub mod fourier;
pub mod group;
pub mod quadrature;
pub mod repr;

pub use error::{Error, Result};
