//! Exact Batalin–Vilkovisky calculus on finite-dimensional gauge systems and
//! on a finite 1+1 lattice.
//!
//! * [`graded`]: graded-commutative polynomials with series coefficients.
//! * [`classical`]: antibracket, BV Laplacian, differentials, master equation,
//!   gauge fixing.
//! * [`cohomology`]: degree-truncated cohomology by exact linear algebra.
//! * [`lattice`]: Green's functions and perturbative deformation quantization
//!   of a free scalar field.
//! * [`models`]: built-in model library.

pub mod classical;
pub mod cohomology;
pub mod error;
pub mod graded;
pub mod lattice;
pub mod models;

pub use error::{AlgebraError, BvError, CohomologyError, LatticeError};
