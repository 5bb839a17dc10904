use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exact::rational::{from_f64, int, simplest_between};
use crate::Rational;

use super::orbitals::Orbitals;

const RESIDUAL_TOL: f64 = 1e-7;
const RECONSTRUCTION_TOL: f64 = 1e-9;
const ATTEMPTS: usize = 4;

/// Spectral data of a commutative orbital algebra.
///
/// `p[k][j]` is the eigenvalue of the indicator of class `j` on the common
/// eigenspace `k`. Columns refer to [`SchemeSpectrum::orbitals`], the
/// symmetrized classes. Row 0 is the eigenspace of the all-ones vector.
#[derive(Clone, Debug)]
pub struct SchemeSpectrum {
    pub p: Vec<Vec<f64>>,
    pub multiplicities: Vec<usize>,
    pub orbitals: Orbitals,
}

/// Simultaneous diagonalization of the orbital indicator matrices.
///
/// A random combination of the (symmetrized) indicators is diagonalized in
/// `f64`; each eigenspace of it must be a common eigenspace of all of them.
pub fn scheme_eigenmatrix(orbitals: &Orbitals) -> Result<SchemeSpectrum> {
    if !orbitals.is_commutative() {
        return Err(Error::NoncommutativeCommutant);
    }
    let sym = orbitals.symmetrized();
    let n = sym.n();
    let r = sym.class_count();
    let mats: Vec<DMatrix<f64>> = (0..r).map(|j| DMatrix::from_fn(n, n, |x, y| (sym.class(x, y) == j) as u8 as f64)).collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..ATTEMPTS {
        let weights: Vec<f64> = (0..r).map(|_| rng.gen_range(1..1000) as f64 / 1000.0).collect();
        let combo = mats.iter().zip(&weights).fold(DMatrix::zeros(n, n), |acc, (m, w)| acc + m * *w);
        if let Some(spec) = try_split(&combo, &mats, &sym) {
            return Ok(spec);
        }
    }
    Err(Error::NumericalBreakdown("no generic combination separated the eigenspaces".into()))
}

fn try_split(combo: &DMatrix<f64>, mats: &[DMatrix<f64>], sym: &Orbitals) -> Option<SchemeSpectrum> {
    let n = sym.n();
    let r = mats.len();
    let eig = SymmetricEigen::new(combo.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().expect("nonempty")]).abs() <= 1e-6 * scale => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.len() != r {
        return None;
    }
    let mut rows = Vec::with_capacity(r);
    for cluster in &clusters {
        let v = eig.eigenvectors.select_columns(cluster);
        let m = cluster.len() as f64;
        let mut row = Vec::with_capacity(r);
        for a in mats {
            let av = a * &v;
            let theta = (v.transpose() * &av).trace() / m;
            if (&av - &v * theta).amax() > RESIDUAL_TOL * (1.0 + theta.abs()) {
                return None;
            }
            row.push(theta);
        }
        let ones_part = v.transpose() * DMatrix::from_element(n, 1, 1.0);
        rows.push((row, cluster.len(), ones_part.norm() > 0.5, v));
    }
    for (j, a) in mats.iter().enumerate() {
        let rebuilt = rows.iter().fold(DMatrix::zeros(n, n), |acc, (row, _, _, v)| acc + v * v.transpose() * row[j]);
        if (&rebuilt - a).amax() > RECONSTRUCTION_TOL {
            return None;
        }
    }
    rows.sort_by(|a, b| {
        b.2.cmp(&a.2).then_with(|| {
            a.0.iter().zip(&b.0).skip(1).map(|(x, y)| y.total_cmp(x)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    if !rows[0].2 {
        return None;
    }
    Some(SchemeSpectrum {
        p: rows.iter().map(|r| r.0.clone()).collect(),
        multiplicities: rows.iter().map(|r| r.1).collect(),
        orbitals: sym.clone(),
    })
}

impl SchemeSpectrum {
    /// The eigenmatrix in exact rationals, if every entry is within `1e-6` of
    /// a rational that passes the exact check: each row is a character of
    /// the algebra, `P[k][i] P[k][j] = Σ_l p_ij^l P[k][l]`, the rows are
    /// distinct, and `N / Σ_j P[k][j]^2 / v_j` equals the multiplicity.
    pub fn exact(&self) -> Option<Vec<Vec<Rational>>> {
        let snap = |x: f64| -> Option<Rational> {
            let eps = from_f64(1e-6)?;
            let c = from_f64(x)?;
            Some(simplest_between(&(&c - &eps), &(&c + &eps)))
        };
        let p: Vec<Vec<Rational>> =
            self.p.iter().map(|row| row.iter().map(|&x| snap(x)).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
        let orb = &self.orbitals;
        let r = orb.class_count();
        let inter = orb.intersection_numbers();
        for row in &p {
            for i in 0..r {
                for j in 0..r {
                    let rhs = (0..r).fold(Rational::zero(), |acc, l| acc + int(inter[i][j][l] as i64) * &row[l]);
                    if &row[i] * &row[j] != rhs {
                        return None;
                    }
                }
            }
        }
        for (a, ra) in p.iter().enumerate() {
            if p[..a].contains(ra) {
                return None;
            }
        }
        let n = int(orb.n() as i64);
        for (row, &m) in p.iter().zip(&self.multiplicities) {
            let norm = row
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, v)| acc + v * v / int(orb.valency(j) as i64));
            if !norm.is_positive() || &n / norm != int(m as i64) {
                return None;
            }
        }
        debug_assert!(p[0].iter().enumerate().all(|(j, v)| *v == int(orb.valency(j) as i64)));
        debug_assert!(p.iter().all(|row| row[0].is_one()));
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::to_f64;
    use crate::orthopoly::krawtchouk_table;
    use crate::symmetry::group::{dihedral_group, hyperoctahedral_group, petersen_group, symmetric_group, PermGroup};
    use crate::symmetry::orbitals::orbit_pairs;
    use std::f64::consts::PI;

    #[test]
    fn hamming_cube_gives_krawtchouk() {
        for n in 1..=4usize {
            let spec = scheme_eigenmatrix(&orbit_pairs(&hyperoctahedral_group(n))).unwrap();
            let exact = spec.exact().expect("rational eigenmatrix");
            let table = krawtchouk_table(n);
            for k in 0..=n {
                for t in 0..=n {
                    // distance-t class acts on eigenspace k by K_t(k)
                    assert_eq!(exact[k][t], crate::exact::rational::from_bigint(table[t][k].clone()));
                }
                assert_eq!(num_bigint::BigInt::from(spec.multiplicities[k]), crate::exact::rational::binomial(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn pentagon_eigenvalues() {
        let spec = scheme_eigenmatrix(&orbit_pairs(&dihedral_group(5))).unwrap();
        let adj = spec.orbitals.class(0, 1);
        let mut got: Vec<f64> = spec.p.iter().map(|row| row[adj]).collect();
        got.sort_by(f64::total_cmp);
        let mut expected = [2.0, 2.0 * (2.0 * PI / 5.0).cos(), 2.0 * (4.0 * PI / 5.0).cos()];
        expected.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(spec.multiplicities, vec![1, 2, 2]);
        assert!(spec.exact().is_none());
    }

    #[test]
    fn complete_scheme() {
        for n in 2..8usize {
            let spec = scheme_eigenmatrix(&orbit_pairs(&symmetric_group(n))).unwrap();
            let exact = spec.exact().unwrap();
            assert_eq!(exact, vec![vec![int(1), int(n as i64 - 1)], vec![int(1), int(-1)]]);
            assert_eq!(spec.multiplicities, vec![1, n - 1]);
        }
    }

    #[test]
    fn trace_identity_and_valencies() {
        let groups = [petersen_group(), dihedral_group(7), hyperoctahedral_group(3), dihedral_group(6)];
        for g in groups {
            let spec = scheme_eigenmatrix(&orbit_pairs(&g)).unwrap();
            let orb = &spec.orbitals;
            assert_eq!(spec.multiplicities.iter().sum::<usize>(), orb.n());
            for j in 0..orb.class_count() {
                let trace: f64 = spec.p.iter().zip(&spec.multiplicities).map(|(row, &m)| m as f64 * row[j]).sum();
                let expected = if j == 0 { orb.n() as f64 } else { 0.0 };
                assert!((trace - expected).abs() < 1e-9);
                assert!((spec.p[0][j] - orb.valency(j) as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn petersen_adjacency_spectrum() {
        let spec = scheme_eigenmatrix(&orbit_pairs(&petersen_group())).unwrap();
        let exact = spec.exact().unwrap();
        let adj = spec.orbitals.class(0, 7);
        let mut values: Vec<(f64, usize)> =
            exact.iter().zip(&spec.multiplicities).map(|(row, &m)| (to_f64(&row[adj]), m)).collect();
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(values, vec![(-2.0, 4), (1.0, 5), (3.0, 1)]);
    }

    #[test]
    fn noncommutative_rejected() {
        let g = PermGroup::new(4, vec![vec![1, 0, 2, 3]]).unwrap();
        assert!(matches!(scheme_eigenmatrix(&orbit_pairs(&g)), Err(Error::NoncommutativeCommutant)));
    }
}
