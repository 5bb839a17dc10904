use std::collections::BTreeSet;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Permutation group on `{0, ..., degree - 1}` given by generators. Each
/// generator is its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for (idx, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {idx} has length {} on {degree} points",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::InvalidPermutation(format!("generator {idx} is not a bijection")));
                }
                seen[img] = true;
            }
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }
}

/// Simple undirected graph on `{0, ..., n - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl FiniteGraph {
    /// Edges are unordered; duplicates collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::Domain(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(FiniteGraph { n, edges: set })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphInput {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    generators: Vec<Vec<usize>>,
}

/// Reads `{"vertices": N, "edges": [[i, j], ...], "generators": [[...], ...]}`.
pub fn parse_graph_json(text: &str) -> Result<(FiniteGraph, PermGroup)> {
    let input: GraphInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let graph = FiniteGraph::new(input.vertices, input.edges.iter().map(|e| (e[0], e[1])))?;
    let group = PermGroup::new(input.vertices, input.generators)?;
    Ok((graph, group))
}

pub fn cycle_graph(n: usize) -> FiniteGraph {
    FiniteGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|(i, j)| i != j)).expect("valid cycle")
}

/// Rotation and reflection of the `n`-gon.
pub fn dihedral_group(n: usize) -> PermGroup {
    let rotation = (0..n).map(|i| (i + 1) % n).collect();
    let reflection = (0..n).map(|i| (n - i) % n).collect();
    PermGroup::new(n, vec![rotation, reflection]).expect("valid dihedral generators")
}

pub fn complete_graph(n: usize) -> FiniteGraph {
    FiniteGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid complete graph")
}

/// A transposition and an `n`-cycle.
pub fn symmetric_group(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(swap);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    PermGroup::new(n, gens).expect("valid symmetric generators")
}

fn pairs_of_five() -> Vec<(usize, usize)> {
    (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect()
}

/// Kneser graph on the 2-subsets of a 5-set, disjoint pairs adjacent.
pub fn petersen_graph() -> FiniteGraph {
    let verts = pairs_of_five();
    let mut edges = Vec::new();
    for (a, &(i, j)) in verts.iter().enumerate() {
        for (b, &(k, l)) in verts.iter().enumerate().skip(a + 1) {
            if i != k && i != l && j != k && j != l {
                edges.push((a, b));
            }
        }
    }
    FiniteGraph::new(10, edges).expect("valid Petersen graph")
}

/// `S_5` acting on the 2-subsets, matching [`petersen_graph`]'s labelling.
pub fn petersen_group() -> PermGroup {
    let verts = pairs_of_five();
    let induced = |sigma: &[usize]| -> Vec<usize> {
        verts
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (sigma[i], sigma[j]);
                verts.iter().position(|&v| v == (a.min(b), a.max(b))).expect("2-subset")
            })
            .collect()
    };
    let s5 = symmetric_group(5);
    PermGroup::new(10, s5.generators().iter().map(|g| induced(g)).collect()).expect("valid induced action")
}

/// `{0,1}^n` with edges between points whose Hamming distance lies in `distances`.
pub fn hamming_graph(n: usize, distances: &[usize]) -> FiniteGraph {
    let size = 1usize << n;
    let mut edges = Vec::new();
    for x in 0..size {
        for y in x + 1..size {
            if distances.contains(&((x ^ y).count_ones() as usize)) {
                edges.push((x, y));
            }
        }
    }
    FiniteGraph::new(size, edges).expect("valid Hamming graph")
}

/// Coordinate permutations and bit flips of `{0,1}^n`; points are bit masks.
pub fn hyperoctahedral_group(n: usize) -> PermGroup {
    let size = 1usize << n;
    let permute = |sigma: &[usize]| -> Vec<usize> {
        (0..size)
            .map(|x| (0..n).filter(|&i| x >> i & 1 == 1).fold(0, |acc, i| acc | 1 << sigma[i]))
            .collect()
    };
    let mut gens: Vec<Vec<usize>> = symmetric_group(n).generators().iter().map(|g| permute(g)).collect();
    if n >= 1 {
        gens.push((0..size).map(|x| x ^ 1).collect());
    }
    PermGroup::new(size, gens).expect("valid hyperoctahedral generators")
}
