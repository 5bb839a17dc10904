//! Exact arithmetic: rationals, univariate polynomials, Sturm sequences and
//! linear solving.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod sturm;

/// Arbitrary-precision fraction in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub use linalg::solve_linear;
pub use poly::{poly_eval, Poly};
pub use rational::{int, rat};
pub use scalar::Scalar;
pub use sturm::sturm_nonpositive;
