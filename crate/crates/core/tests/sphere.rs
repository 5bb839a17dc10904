use num_traits::Signed;
use proptest::prelude::*;

use theta_bounds::exact::rational::{int, rat};
use theta_bounds::orthopoly::jacobi;
use theta_bounds::sphere::{
    adjoint_check, check_certificate, dgs_lp_bound, harm_dim, harmonic_decompose, harmonic_recompose, laplacian,
    laplacian_kernel_dim, monomials, verify_certificate, zonal_kernel, MultiPoly, Rejection,
};
use theta_bounds::Rational;

fn form(n: usize, d: u32, coeffs: &[i64]) -> MultiPoly {
    let basis = monomials(n, d);
    let c: Vec<Rational> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &v)| int(v)).collect();
    MultiPoly::from_coeffs(n, &basis, &c)
}

#[test]
fn harmonic_dimension_is_kernel_dimension() {
    for n in 2..=4usize {
        for k in 0..=8u32 {
            assert_eq!(harm_dim(n, k as usize).unwrap(), laplacian_kernel_dim(n, k) as u64, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn zonal_kernels_reproduce_dimension() {
    for n in 3..=5usize {
        for k in 0..=4u32 {
            let q = zonal_kernel(n, k).unwrap();
            assert_eq!(q.eval(&int(1)), int(harm_dim(n, k as usize).unwrap() as i64));
            let p = jacobi(n, k as usize).unwrap();
            assert_eq!(q, p.scale(&q.eval(&int(1))));
        }
    }
}

#[test]
fn cross_polytope_bounds() {
    for n in 3..=16usize {
        let cert = dgs_lp_bound(n, &int(0), 2).unwrap();
        let nn = n as i64;
        assert_eq!(cert.bound, int(2 * nn));
        assert_eq!(cert.coeffs, vec![int(0), int(nn), int(nn - 1)]);
        assert!(verify_certificate(&cert));
    }
}

#[test]
fn bounds_do_not_increase_with_degree() {
    let cases: [(usize, Rational, std::ops::RangeInclusive<usize>); 3] =
        [(8, rat(1, 2), 6..=10), (5, int(0), 2..=5), (3, rat(1, 2), 3..=5)];
    for (n, c, degrees) in cases {
        let mut prev: Option<Rational> = None;
        for degree in degrees {
            let cert = dgs_lp_bound(n, &c, degree).unwrap();
            assert!(verify_certificate(&cert));
            if let Some(p) = &prev {
                assert!(cert.bound <= *p, "n = {n}, degree = {degree}");
            }
            prev = Some(cert.bound);
        }
    }
}

#[test]
fn corrupted_certificates() {
    let good = dgs_lp_bound(8, &rat(1, 2), 6).unwrap();
    assert_eq!(check_certificate(&good), Ok(()));
    let mut neg = good.clone();
    neg.coeffs[1] = -neg.coeffs[1].clone();
    assert!(matches!(check_certificate(&neg), Err(Rejection::NegativeCoefficient { k: 1 })));
    let mut bound = good.clone();
    bound.bound = int(239);
    assert!(matches!(check_certificate(&bound), Err(Rejection::BoundMismatch { .. })));
    let mut loose = good.clone();
    loose.cos_theta = rat(3, 5);
    assert!(matches!(check_certificate(&loose), Err(Rejection::IntervalViolation { .. })));
}

fn form_strategy(max_n: usize, min_d: u32, max_d: u32) -> impl Strategy<Value = (usize, u32, Vec<i64>)> {
    (2..=max_n, min_d..=max_d).prop_flat_map(|(n, d)| {
        let len = monomials(n, d).len();
        (Just(n), Just(d), prop::collection::vec(-9i64..10, len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_reconstructs((n, d, c) in form_strategy(4, 0, 8)) {
        let p = form(n, d, &c);
        let parts = harmonic_decompose(&p).unwrap();
        prop_assert_eq!(harmonic_recompose(n, &parts), p);
        for h in &parts {
            prop_assert!(laplacian(h).is_zero());
        }
    }

    #[test]
    fn multiplication_by_omega_is_adjoint_to_laplacian(
        (n, d, cg) in form_strategy(4, 2, 6),
        cf in prop::collection::vec(-9i64..10, 1..40),
    ) {
        let f = form(n, d - 2, &cf);
        let g = form(n, d, &cg);
        let (lhs, rhs) = adjoint_check(&f, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn zonal_kernel_value_is_positive() {
    for n in 3..=5usize {
        for k in 0..=4u32 {
            assert!(zonal_kernel(n, k).unwrap().eval(&int(1)).is_positive());
        }
    }
}

#[test]
fn adjointness_for_every_small_shape() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(11);
    for n in 2..=4usize {
        for d in 2..=6u32 {
            for _ in 0..100 {
                let cf: Vec<i64> = (0..monomials(n, d - 2).len()).map(|_| rng.gen_range(-9..10)).collect();
                let cg: Vec<i64> = (0..monomials(n, d).len()).map(|_| rng.gen_range(-9..10)).collect();
                let (lhs, rhs) = adjoint_check(&form(n, d - 2, &cf), &form(n, d, &cg)).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, d = {d}");
            }
        }
    }
}
