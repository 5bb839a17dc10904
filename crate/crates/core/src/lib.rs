//! Exact, symmetry-reduced theta-function bounds for packing problems.
//!
//! The crate computes three families of upper bounds on stability numbers:
//!
//! * Delsarte's linear programming bound for binary codes on the Hamming
//!   cube ([`boolean`]),
//! * the linear programming bound for spherical codes and kissing numbers,
//!   returned together with a rigorously checkable polynomial
//!   [`Certificate`](sphere::Certificate) ([`sphere`]),
//! * the reduced strengthened theta function of finite vertex-transitive
//!   graphs under a user supplied permutation group ([`symmetry`]).
//!
//! All exact computations run over [`Rational`]. The polynomial and LP code
//! is generic over the [`Scalar`] trait so the same routines run in `f64`
//! when an approximate answer is enough.

pub mod boolean;
pub mod error;
pub mod exact;
pub mod lp;
pub mod orthopoly;
pub mod sphere;
pub mod symmetry;

pub use error::{Error, Result};
pub use exact::scalar::Scalar;
pub use exact::Rational;

/// Univariate polynomial with exact rational coefficients.
pub type UniPoly = exact::poly::Poly<Rational>;
/// Univariate polynomial with `f64` coefficients.
pub type FloatPoly = exact::poly::Poly<f64>;
/// Linear program over exact rationals.
pub type ExactLp = lp::LpProblem<Rational>;
/// Linear program over `f64`.
pub type FloatLp = lp::LpProblem<f64>;
/// Solution of an exact linear program.
pub type ExactLpSolution = lp::LpSolution<Rational>;
/// Function on the Hamming cube with exact rational values.
pub type RationalTable = boolean::FunctionTable<Rational>;
