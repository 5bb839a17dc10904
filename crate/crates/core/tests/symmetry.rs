use proptest::prelude::*;

use theta_bounds::boolean::delsarte_lp_bound;
use theta_bounds::exact::rational::{from_bigint, int, to_f64};
use theta_bounds::orthopoly::krawtchouk_table;
use theta_bounds::symmetry::{
    complete_graph, cycle_graph, dihedral_group, group_average, hamming_graph, hyperoctahedral_group, orbit_pairs,
    parse_graph_json, petersen_graph, petersen_group, scheme_eigenmatrix, stable_set_bruteforce, symmetric_group,
    theta_prime_reduced, FiniteGraph, PermGroup,
};
use theta_bounds::{Error, Rational};

fn groups() -> Vec<PermGroup> {
    vec![dihedral_group(5), dihedral_group(6), petersen_group(), hyperoctahedral_group(3), symmetric_group(4)]
}

fn matrix(n: usize, entries: &[i64]) -> Vec<Vec<Rational>> {
    (0..n).map(|x| (0..n).map(|y| int(entries[(x * n + y) % entries.len()])).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn average_is_a_linear_projection(
        which in 0usize..5,
        a in prop::collection::vec(-20i64..20, 1..80),
        b in prop::collection::vec(-20i64..20, 1..80),
        s in -5i64..6,
    ) {
        let group = &groups()[which];
        let orb = orbit_pairs(group);
        let n = group.degree();
        let (ma, mb) = (matrix(n, &a), matrix(n, &b));
        let avg = group_average(&ma, &orb).unwrap();
        prop_assert_eq!(group_average(&avg, &orb).unwrap(), avg.clone());
        let combo: Vec<Vec<Rational>> =
            ma.iter().zip(&mb).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x * int(s) + y).collect()).collect();
        let lhs = group_average(&combo, &orb).unwrap();
        let avg_b = group_average(&mb, &orb).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(&lhs[x][y], &(&avg[x][y] * int(s) + &avg_b[x][y]));
                for g in group.generators() {
                    prop_assert_eq!(&avg[g[x]][g[y]], &avg[x][y]);
                }
            }
        }
    }
}

#[test]
fn indicators_partition_the_all_ones_matrix() {
    for group in groups() {
        let orb = orbit_pairs(&group);
        let n = group.degree();
        let mut total = vec![vec![int(0); n]; n];
        for c in 0..orb.class_count() {
            for (row, ind) in total.iter_mut().zip(orb.indicator::<Rational>(c)) {
                for (t, v) in row.iter_mut().zip(ind) {
                    *t += v;
                }
            }
        }
        assert!(total.iter().flatten().all(|v| *v == int(1)));
    }
}

#[test]
fn theta_dominates_stability_number() {
    let corpus: Vec<(FiniteGraph, PermGroup)> = vec![
        (cycle_graph(5), dihedral_group(5)),
        (cycle_graph(7), dihedral_group(7)),
        (cycle_graph(8), dihedral_group(8)),
        (cycle_graph(9), dihedral_group(9)),
        (petersen_graph(), petersen_group()),
        (complete_graph(6), symmetric_group(6)),
        (hamming_graph(4, &[1]), hyperoctahedral_group(4)),
        (hamming_graph(4, &[1, 2]), hyperoctahedral_group(4)),
        (hamming_graph(5, &[1, 2]), hyperoctahedral_group(5)),
    ];
    for (graph, group) in corpus {
        let theta = theta_prime_reduced(&graph, &group).unwrap();
        let alpha = stable_set_bruteforce(&graph).unwrap() as f64;
        assert!(theta >= alpha - 1e-6, "theta {theta} < alpha {alpha}");
    }
}

#[test]
fn cube_reduction_matches_code_lp() {
    for n in 1..=5usize {
        let group = hyperoctahedral_group(n);
        for d in 1..=n {
            let distances: Vec<usize> = (1..d).collect();
            let theta = theta_prime_reduced(&hamming_graph(n, &distances), &group).unwrap();
            let lp = to_f64(&delsarte_lp_bound(n, d).unwrap());
            assert!((theta - lp).abs() < 1e-6, "n = {n}, d = {d}: {theta} vs {lp}");
        }
    }
}

#[test]
fn exact_three_cube_eigenmatrix() {
    let spec = scheme_eigenmatrix(&orbit_pairs(&hyperoctahedral_group(3))).unwrap();
    let p = spec.exact().unwrap();
    let table = krawtchouk_table(3);
    for k in 0..=3 {
        for t in 0..=3 {
            assert_eq!(p[k][t], from_bigint(table[t][k].clone()));
        }
    }
    assert_eq!(spec.multiplicities, vec![1, 3, 3, 1]);
}

#[test]
fn invalid_inputs() {
    assert!(matches!(theta_prime_reduced(&cycle_graph(6), &symmetric_group(6)), Err(Error::NotInvariant(_))));
    let swap = PermGroup::new(3, vec![vec![1, 0, 2]]).unwrap();
    assert!(matches!(scheme_eigenmatrix(&orbit_pairs(&swap)), Err(Error::NoncommutativeCommutant)));
    assert!(matches!(stable_set_bruteforce(&FiniteGraph::new(70, []).unwrap()), Err(Error::TooLarge(_))));
    let bad = r#"{"vertices": 2, "edges": [[0, 1]], "generators": [[0, 1]], "extra": 1}"#;
    assert!(matches!(parse_graph_json(bad), Err(Error::Parse(_))));
}
