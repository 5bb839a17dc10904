//! Linear programs in natural relation form, solved by a two-phase tableau
//! simplex that is generic over the [`Scalar`](crate::Scalar) type.
//!
//! Exact scalars pivot with Bland's rule and never cycle. Floating scalars
//! pivot on the most negative reduced cost with a `1e-9` threshold.
//! [`solve_exact`] combines both: an `f64` solve proposes a basis which is
//! then certified, or rejected, in exact arithmetic. [`RowGenerationLp`]
//! handles nested families of LPs that grow by one row at a time.

mod certify;
mod dual;
mod problem;
mod tableau;

pub use certify::{check_optimality, solve_exact};
pub use dual::RowGenerationLp;
pub use problem::{Basis, Constraint, LpProblem, LpSolution, LpStatus, Relation, Sense};
pub use tableau::{simplex_solve, simplex_solve_with, PivotRule};
