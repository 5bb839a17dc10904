//! Krawtchouk polynomials of the Hamming cube and normalized Jacobi
//! polynomials `P_k^{(α,α)}`, `α = (n-3)/2`, of the sphere `S^{n-1}`.

mod jacobi;
mod krawtchouk;

pub use jacobi::{jacobi, jacobi_gram, jacobi_gram_schmidt, JacobiFamily};
pub use krawtchouk::{krawtchouk, krawtchouk_gram, krawtchouk_table, KrawtchoukFamily};
