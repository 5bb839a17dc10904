use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use theta_bounds::exact::rational::{binomial, int, rat};
use theta_bounds::orthopoly::{jacobi, jacobi_gram, jacobi_gram_schmidt, krawtchouk, krawtchouk_table, JacobiFamily};
use theta_bounds::Rational;

#[test]
fn jacobi_is_one_at_one() {
    for n in 2..=32usize {
        let fam = JacobiFamily::new(n, 20).unwrap();
        for k in 0..=20 {
            assert!(fam.value(k, &Rational::one()).is_one(), "P_{k}(1) for n = {n}");
        }
    }
}

#[test]
fn jacobi_orthogonal_for_odd_n() {
    for n in (3..=15usize).step_by(2) {
        for k in 0..=10 {
            for k2 in 0..=10 {
                let g = jacobi_gram(n, k, k2).unwrap();
                if k == k2 {
                    assert!(g.is_positive());
                } else {
                    assert!(g.is_zero(), "n = {n}: <P_{k}, P_{k2}> = {g}");
                }
            }
        }
    }
}

#[test]
fn gram_schmidt_matches_recurrence() {
    for n in (3..=15usize).step_by(2) {
        let gs = jacobi_gram_schmidt(n, 10).unwrap();
        for (k, p) in gs.iter().enumerate() {
            assert_eq!(p, &jacobi(n, k).unwrap(), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn circle_and_sphere_closed_forms() {
    // n = 2: Chebyshev T_2 = 2t^2 - 1; n = 3: Legendre P_2 = (3t^2 - 1)/2
    assert_eq!(jacobi(2, 2).unwrap().coeffs(), &[int(-1), int(0), int(2)]);
    assert_eq!(jacobi(3, 2).unwrap().coeffs(), &[rat(-1, 2), int(0), rat(3, 2)]);
    assert_eq!(jacobi(8, 1).unwrap().coeffs(), &[int(0), int(1)]);
}

#[test]
fn krawtchouk_orthogonality_table() {
    for n in 0..=24usize {
        let table = krawtchouk_table(n);
        let weights: Vec<BigInt> = (0..=n).map(|t| binomial(n as i64, t as i64)).collect();
        for k in 0..=n {
            for k2 in k..=n {
                let s: BigInt = (0..=n).map(|t| &weights[t] * &table[k][t] * &table[k2][t]).sum();
                let expected = if k == k2 { (BigInt::one() << n) * &weights[k] } else { BigInt::zero() };
                assert_eq!(s, expected, "n = {n}, k = {k}, k' = {k2}");
            }
        }
    }
}

proptest! {
    #[test]
    fn krawtchouk_reciprocity(n in 0usize..40, k_raw in 0usize..40, t_raw in 0usize..40) {
        let (k, t) = (k_raw % (n + 1), t_raw % (n + 1));
        let table = krawtchouk_table(n);
        let lhs = binomial(n as i64, t as i64) * &table[k][t];
        let rhs = binomial(n as i64, k as i64) * &table[t][k];
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn krawtchouk_polynomial_matches_table(n in 0usize..12, k_raw in 0usize..12) {
        let k = k_raw % (n + 1);
        let p = krawtchouk(n, k).unwrap();
        let table = krawtchouk_table(n);
        for t in 0..=n {
            prop_assert_eq!(p.eval(&int(t as i64)), Rational::from_integer(table[k][t].clone()));
        }
    }

    #[test]
    fn jacobi_bounded_on_interval(n in 2usize..12, k in 0usize..10, num in -1000i64..=1000) {
        // |P_k| <= P_k(1) = 1 on [-1, 1]
        let v = jacobi(n, k).unwrap().eval(&rat(num, 1000));
        prop_assert!(v.abs() <= Rational::one());
    }
}
