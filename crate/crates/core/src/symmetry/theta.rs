use crate::error::{Error, Result};
use crate::lp::{simplex_solve, LpProblem, LpStatus, Relation, Sense};

use super::group::{FiniteGraph, PermGroup};
use super::orbitals::orbit_pairs;
use super::spectrum::scheme_eigenmatrix;

/// Largest vertex count accepted by [`stable_set_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 64;

/// Strengthened theta of a vertex-transitive graph, reduced to an LP over
/// the invariant kernels `K = Σ_j a_j C_j`:
/// minimize `λ` subject to `Σ_j a_j P[k][j] >= 0` for every eigenspace,
/// `a_0 = λ - 1` and `a_j <= -1` on non-edge classes.
pub fn theta_prime_reduced(graph: &FiniteGraph, group: &PermGroup) -> Result<f64> {
    let n = graph.num_vertices();
    if group.degree() != n {
        return Err(Error::ShapeMismatch(format!("group acts on {} points, graph has {n} vertices", group.degree())));
    }
    if n == 0 {
        return Err(Error::Domain("empty graph".into()));
    }
    let orbitals = orbit_pairs(group);
    if !orbitals.is_transitive() {
        return Err(Error::Domain("group is not vertex-transitive; the reduction needs a constant diagonal".into()));
    }
    let spectrum = scheme_eigenmatrix(&orbitals)?;
    let classes = &spectrum.orbitals;
    let r = classes.class_count();
    let mut is_edge = vec![None; r];
    for x in 0..n {
        for y in 0..n {
            let c = classes.class(x, y);
            let e = graph.adjacent(x, y);
            match is_edge[c] {
                None => is_edge[c] = Some(e),
                Some(prev) if prev != e => {
                    return Err(Error::NotInvariant(format!("edge ({x}, {y}) breaks its orbital class")));
                }
                _ => {}
            }
        }
    }
    // a_j = u_j - w_j with u, w >= 0; variables [u_0..u_r, w_0..w_r]
    let mut costs = vec![0.0; 2 * r];
    costs[0] = 1.0;
    costs[r] = -1.0;
    let mut lp = LpProblem::new(Sense::Minimize, costs).with_offset(1.0);
    for row in &spectrum.p {
        let coeffs = row.iter().copied().chain(row.iter().map(|v| -v)).collect();
        lp.add_row(coeffs, Relation::Ge, 0.0);
    }
    for j in 1..r {
        if is_edge[j] == Some(false) {
            let mut coeffs = vec![0.0; 2 * r];
            coeffs[j] = 1.0;
            coeffs[r + j] = -1.0;
            lp.add_row(coeffs, Relation::Le, -1.0);
        }
    }
    let sol = simplex_solve(&lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.objective.expect("optimal objective")),
        other => Err(Error::NumericalBreakdown(format!("reduced theta LP ended {other:?}"))),
    }
}

/// Exact stability number by branch and bound on bitsets, for at most
/// [`BRUTEFORCE_LIMIT`] vertices.
pub fn stable_set_bruteforce(graph: &FiniteGraph) -> Result<usize> {
    let n = graph.num_vertices();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge(format!("{n} vertices exceeds the brute-force limit {BRUTEFORCE_LIMIT}")));
    }
    let mut closed = vec![0u64; n];
    for (v, m) in closed.iter_mut().enumerate() {
        *m |= 1 << v;
    }
    for (i, j) in graph.edges() {
        closed[i] |= 1 << j;
        closed[j] |= 1 << i;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = greedy(&closed, all);
    branch(&closed, all, 0, &mut best);
    Ok(best)
}

/// Repeatedly take the vertex with fewest live neighbours.
fn greedy(closed: &[u64], mut live: u64) -> usize {
    let mut size = 0;
    while live != 0 {
        let v = bits(live).min_by_key(|&v| (closed[v] & live).count_ones()).expect("nonempty");
        live &= !closed[v];
        size += 1;
    }
    size
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn branch(closed: &[u64], mut live: u64, mut size: usize, best: &mut usize) {
    loop {
        if size + live.count_ones() as usize <= *best {
            return;
        }
        if live == 0 {
            *best = size;
            return;
        }
        // a vertex with no live neighbour belongs to some maximum set
        if let Some(v) = bits(live).find(|&v| closed[v] & live == 1 << v) {
            live &= !(1 << v);
            size += 1;
            continue;
        }
        let v = bits(live).max_by_key(|&v| (closed[v] & live).count_ones()).expect("nonempty");
        branch(closed, live & !closed[v], size + 1, best);
        live &= !(1 << v);
    }
}
