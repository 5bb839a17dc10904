//! Symmetry reduction for finite graphs: pair orbits of a permutation group,
//! group averaging, the eigenmatrix of a commutative orbital algebra, and the
//! strengthened theta function reduced to a small LP. An exact branch and
//! bound stability number serves as the oracle.

mod group;
mod orbitals;
mod spectrum;
mod theta;

pub use group::{
    complete_graph, cycle_graph, dihedral_group, hamming_graph, hyperoctahedral_group, parse_graph_json, petersen_graph,
    petersen_group, symmetric_group, FiniteGraph, PermGroup,
};
pub use orbitals::{group_average, orbit_pairs, Orbitals};
pub use spectrum::{scheme_eigenmatrix, SchemeSpectrum};
pub use theta::{stable_set_bruteforce, theta_prime_reduced, BRUTEFORCE_LIMIT};
