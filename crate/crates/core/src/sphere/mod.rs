//! Spherical harmonics and the linear programming bound for spherical codes.

mod certificate;
mod harmonic;
mod lp;
mod multipoly;

pub use certificate::{verify_certificate, check_certificate, Certificate, Rejection};
pub use harmonic::{
    adjoint_check, apolar_inner, apply_inner_product_kernel, harm_dim, harmonic_basis, harmonic_decompose,
    harmonic_recompose, inner_product_kernel_eigenvalue, kernel_eigenvalue_on, laplacian, laplacian_kernel_dim,
    orthogonal_harmonic_basis, sphere_average, sphere_inner, sphere_monomial_average, zonal_kernel,
};
pub use lp::{default_degree, dgs_lp_bound, dgs_lp_bound_with, SphereLpOptions};
pub use multipoly::{monomials, Exponents, MultiPoly};
