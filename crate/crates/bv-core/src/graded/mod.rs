//! Exact graded-commutative polynomial algebra.
//!
//! Generators are even or odd according to their ghost number; monomials are
//! kept in the algebra's declaration order with the Koszul sign of every
//! reordering absorbed into the coefficient. Coefficients are finite series
//! in `ħ` and `λ` over the Gaussian rationals.

mod algebra;
mod monomial;
mod poly;
mod scalar;
mod series;

pub use algebra::{Algebra, Generator, Site, ANTIFIELD_MARK};
pub use monomial::Monomial;
pub use poly::{Grading, Poly, Term};
pub use scalar::Scalar;
pub use series::{Series, Truncation};
