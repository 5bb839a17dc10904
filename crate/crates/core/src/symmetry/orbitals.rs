use crate::error::{Error, Result};
use crate::Scalar;

use super::group::PermGroup;

/// Partition of `V x V` into orbits of the diagonal action `(x, y) -> (ux, uy)`.
///
/// Classes are numbered by first occurrence in row-major order, so the class
/// of `(0, 0)` is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbitals {
    n: usize,
    class_of: Vec<usize>,
    class_count: usize,
    symmetric: Vec<bool>,
    sizes: Vec<usize>,
    representatives: Vec<(usize, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of pairs, by union-find closure over the generators.
pub fn orbit_pairs(group: &PermGroup) -> Orbitals {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n * n).collect();
    for g in group.generators() {
        for x in 0..n {
            for y in 0..n {
                let a = find(&mut parent, x * n + y);
                let b = find(&mut parent, g[x] * n + g[y]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n * n];
    let mut class_of = vec![0; n * n];
    let mut count = 0;
    for p in 0..n * n {
        let root = find(&mut parent, p);
        if label[root] == usize::MAX {
            label[root] = count;
            count += 1;
        }
        class_of[p] = label[root];
    }
    Orbitals::from_labels(n, class_of, count)
}

impl Orbitals {
    fn from_labels(n: usize, class_of: Vec<usize>, class_count: usize) -> Self {
        let mut sizes = vec![0; class_count];
        let mut representatives = vec![(usize::MAX, usize::MAX); class_count];
        for x in 0..n {
            for y in 0..n {
                let c = class_of[x * n + y];
                if sizes[c] == 0 {
                    representatives[c] = (x, y);
                }
                sizes[c] += 1;
            }
        }
        let symmetric = representatives.iter().enumerate().map(|(c, &(x, y))| class_of[y * n + x] == c).collect();
        Orbitals { n, class_of, class_count, symmetric, sizes, representatives }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.n + y]
    }

    /// Whether the transpose of the class is the class itself.
    pub fn is_symmetric(&self, class: usize) -> bool {
        self.symmetric[class]
    }

    /// Number of ordered pairs in the class.
    pub fn size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.representatives[class]
    }

    /// Pairs per vertex in each class; meaningful when transitive.
    pub fn valency(&self, class: usize) -> usize {
        self.sizes[class] / self.n.max(1)
    }

    /// The diagonal forms a single class.
    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|x| self.class(x, x) == 0)
    }

    /// Each class merged with its transpose.
    pub fn symmetrized(&self) -> Orbitals {
        let n = self.n;
        let mut merged = vec![usize::MAX; self.class_count];
        let mut count = 0;
        for c in 0..self.class_count {
            if merged[c] != usize::MAX {
                continue;
            }
            let (x, y) = self.representatives[c];
            let t = self.class(y, x);
            merged[c] = count;
            merged[t] = count;
            count += 1;
        }
        let class_of = self.class_of.iter().map(|&c| merged[c]).collect();
        Orbitals::from_labels(n, class_of, count)
    }

    /// Indicator matrix of one class.
    pub fn indicator<T: Scalar>(&self, class: usize) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| if self.class(x, y) == class { T::one() } else { T::zero() }).collect())
            .collect()
    }

    /// `p[i][j][l] = #{z : (x, z) in i, (z, y) in j}` for `(x, y)` in class `l`,
    /// so that `A_i A_j = Σ_l p[i][j][l] A_l`.
    pub fn intersection_numbers(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.class_count;
        let mut p = vec![vec![vec![0u64; r]; r]; r];
        for (l, &(x, y)) in self.representatives.iter().enumerate() {
            for z in 0..self.n {
                p[self.class(x, z)][self.class(z, y)][l] += 1;
            }
        }
        p
    }

    /// The orbital matrices pairwise commute.
    pub fn is_commutative(&self) -> bool {
        let p = self.intersection_numbers();
        let r = self.class_count;
        (0..r).all(|i| (0..r).all(|j| p[i][j] == p[j][i]))
    }
}

/// Projection onto class-constant matrices: every entry becomes the mean of
/// `m` over its class.
pub fn group_average<T: Scalar>(m: &[Vec<T>], orbitals: &Orbitals) -> Result<Vec<Vec<T>>> {
    let n = orbitals.n();
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch(format!("group average expects a {n} x {n} matrix")));
    }
    let mut sums = vec![T::zero(); orbitals.class_count()];
    for (x, row) in m.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            sums[orbitals.class(x, y)] += v;
        }
    }
    let means: Vec<T> = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| s / T::from_usize(orbitals.size(c)).expect("class size fits"))
        .collect();
    Ok((0..n).map(|x| (0..n).map(|y| means[orbitals.class(x, y)].clone()).collect()).collect())
}
