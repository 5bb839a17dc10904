//! Harmonic analysis on the Hamming cube `{0,1}^n` and Delsarte's bound.

mod cube;
mod delsarte;
mod fourier;

pub use cube::{character_eval, hamming_distance, weight_classes, CubePoint};
pub use delsarte::{delsarte_lp_bound, delsarte_lp_problem, delsarte_lp_solve, delsarte_lp_solve_range, DelsarteSolution};
pub use fourier::{inverse_walsh, naive_walsh, walsh_transform, zonal_sum, FunctionTable, TableValue};
