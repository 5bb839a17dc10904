use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multipoly::{monomials, MultiPoly};
use crate::error::{domain, Error, Result};
use crate::exact::linalg::{nullspace, rank, solve_linear};
use crate::exact::rational::{binomial, factorial, from_bigint, int};
use crate::orthopoly::jacobi;
use crate::{Rational, UniPoly};

/// `Δp = Σ_i ∂²p/∂x_i²`.
pub fn laplacian(p: &MultiPoly) -> MultiPoly {
    (0..p.n()).fold(MultiPoly::zero(p.n()), |acc, i| acc.add(&p.derivative(i).derivative(i)))
}

/// Matrix of `q ↦ Δ(ω^j q)` from degree `d_in` to degree `d_in + 2j - 2`.
fn operator_matrix(n: usize, d_in: u32, f: impl Fn(&MultiPoly) -> MultiPoly, d_out: u32) -> Vec<Vec<Rational>> {
    let cols = monomials(n, d_in);
    let rows = monomials(n, d_out);
    let images: Vec<Vec<Rational>> =
        cols.iter().map(|e| f(&MultiPoly::monomial(e.clone(), Rational::one())).coeffs_on(&rows)).collect();
    (0..rows.len()).map(|i| images.iter().map(|col| col[i].clone()).collect()).collect()
}

/// `p = h_d + ω h_{d-2} + ω² h_{d-4} + ...` with every `h` harmonic.
/// Returns `[h_d, h_{d-2}, ...]`.
pub fn harmonic_decompose(p: &MultiPoly) -> Result<Vec<MultiPoly>> {
    match p.homogeneous_degree()? {
        Some(d) => Ok(decompose(p, d)),
        None => Ok(vec![MultiPoly::zero(p.n())]),
    }
}

fn decompose(p: &MultiPoly, d: u32) -> Vec<MultiPoly> {
    let n = p.n();
    if d < 2 {
        return vec![p.clone()];
    }
    // find q with Δ(ω q) = Δ p, then p - ω q is harmonic
    let omega = MultiPoly::omega(n);
    let m = operator_matrix(n, d - 2, |q| laplacian(&omega.mul(q)), d - 2);
    let target = laplacian(p).coeffs_on(&monomials(n, d - 2));
    let q_coeffs = solve_linear(&m, &target).expect("Δ∘ω is invertible on each degree");
    let q = MultiPoly::from_coeffs(n, &monomials(n, d - 2), &q_coeffs);
    let mut out = vec![p.sub(&omega.mul(&q))];
    out.extend(decompose(&q, d - 2));
    out
}

/// `Σ_j ω^j h_{d-2j}`, the inverse of [`harmonic_decompose`].
pub fn harmonic_recompose(n: usize, parts: &[MultiPoly]) -> MultiPoly {
    let omega = MultiPoly::omega(n);
    parts.iter().enumerate().fold(MultiPoly::zero(n), |acc, (j, h)| acc.add(&omega.pow(j as u32).mul(h)))
}

/// `h_k = C(n+k-1, n-1) - C(n+k-3, n-1)`.
pub fn harm_dim(n: usize, k: usize) -> Result<u64> {
    if n < 2 {
        return Err(domain(format!("harm_dim needs n >= 2, got {n}")));
    }
    let (n, k) = (n as i64, k as i64);
    let h = binomial(n + k - 1, n - 1) - binomial(n + k - 3, n - 1);
    h.to_u64().ok_or_else(|| Error::TooLarge(format!("h_{k} for n = {n}")))
}

/// Dimension of the kernel of `Δ` on degree-`k` forms, by exact rank.
pub fn laplacian_kernel_dim(n: usize, k: u32) -> usize {
    let cols = monomials(n, k).len();
    if k < 2 {
        return cols;
    }
    cols - rank(&operator_matrix(n, k, laplacian, k - 2))
}

/// A basis of `Harm_k` from the exact nullspace of `Δ`.
pub fn harmonic_basis(n: usize, k: u32) -> Vec<MultiPoly> {
    let basis = monomials(n, k);
    if k < 2 {
        return basis.into_iter().map(|e| MultiPoly::monomial(e, Rational::one())).collect();
    }
    let m = operator_matrix(n, k, laplacian, k - 2);
    nullspace(&m, basis.len()).iter().map(|v| MultiPoly::from_coeffs(n, &basis, v)).collect()
}

fn double_factorial_odd(m: u32) -> Rational {
    // (m - 1)!! for even m
    (1..m).step_by(2).fold(Rational::one(), |acc, v| acc * int(v as i64))
}

/// Average of `x^a` over the unit sphere `S^{n-1}`, `n = a.len()`.
pub fn sphere_monomial_average(exponents: &[u32]) -> Rational {
    if exponents.iter().any(|e| e % 2 == 1) {
        return Rational::zero();
    }
    let n = exponents.len() as i64;
    let half: u32 = exponents.iter().sum::<u32>() / 2;
    let num = exponents.iter().fold(Rational::one(), |acc, &e| acc * double_factorial_odd(e));
    let den = (0..half as i64).fold(Rational::one(), |acc, j| acc * int(n + 2 * j));
    num / den
}

/// Average of `p` over the unit sphere.
pub fn sphere_average(p: &MultiPoly) -> Rational {
    p.terms().iter().map(|(e, c)| c * sphere_monomial_average(e)).sum()
}

/// `(f, g)`: average of `f g` over the sphere (real coefficients).
pub fn sphere_inner(f: &MultiPoly, g: &MultiPoly) -> Rational {
    sphere_average(&f.mul(g))
}

/// `⟨f, g⟩ = (1/d!) f(∇) g` on forms of degree `d`.
pub fn apolar_inner(f: &MultiPoly, g: &MultiPoly) -> Result<Rational> {
    let d = match (f.homogeneous_degree()?, g.homogeneous_degree()?) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::DegreeMismatch(format!("apolar pairing of degrees {a} and {b}")))
        }
        (Some(a), _) | (_, Some(a)) => a,
        (None, None) => return Ok(Rational::zero()),
    };
    Ok(f.apply_as_operator(g).constant_term() / from_bigint(factorial(d)))
}

/// Both sides of the adjointness of `ω·` and `Δ` for `f` of degree `d - 2`
/// and `g` of degree `d`, each computed as `(1/d!) × (operator pairing)`:
/// `(1/d!) (ωf)(∇) g` and `(1/d!) f(∇) Δg`.
pub fn adjoint_check(f: &MultiPoly, g: &MultiPoly) -> Result<(Rational, Rational)> {
    if f.n() != g.n() {
        return Err(Error::DegreeMismatch(format!("{} and {} variables", f.n(), g.n())));
    }
    let df = f.homogeneous_degree()?;
    let dg = g.homogeneous_degree()?;
    let d = match (df, dg) {
        (Some(a), Some(b)) if a + 2 != b => {
            return Err(Error::DegreeMismatch(format!("f has degree {a}, g has degree {b}; need deg g = deg f + 2")))
        }
        (_, Some(b)) if b < 2 => return Err(Error::DegreeMismatch(format!("g has degree {b} < 2"))),
        (_, Some(b)) => b,
        (Some(a), None) => a + 2,
        (None, None) => return Ok((Rational::zero(), Rational::zero())),
    };
    let norm = from_bigint(factorial(d));
    let omega = MultiPoly::omega(f.n());
    let lhs = omega.mul(f).apply_as_operator(g).constant_term() / &norm;
    let rhs = f.apply_as_operator(&laplacian(g)).constant_term() / &norm;
    Ok((lhs, rhs))
}

/// Orthogonal basis of `Harm_k` under [`sphere_inner`], with squared norms.
pub fn orthogonal_harmonic_basis(n: usize, k: u32) -> Vec<(MultiPoly, Rational)> {
    let mut out: Vec<(MultiPoly, Rational)> = Vec::new();
    for h in harmonic_basis(n, k) {
        let mut g = h;
        for (b, nb) in &out {
            let c = sphere_inner(&g, b) / nb;
            g = g.sub(&b.scale(&c));
        }
        let norm = sphere_inner(&g, &g);
        out.push((g, norm));
    }
    out
}

/// The reproducing kernel of `Harm_k` on the sphere as a polynomial in
/// `x·y`: `Z_k(x, y) = Σ_i g_i(x) g_i(y) / (g_i, g_i) = Q(x·y)`.
///
/// The bivariate kernel is evaluated at `x = e_1`, `y = (t, s, 0, ...)` and
/// `s²` is rewritten as `1 - t²`. The result is checked to be a positive
/// multiple of the normalized Jacobi polynomial.
pub fn zonal_kernel(n: usize, k: u32) -> Result<UniPoly> {
    if n < 2 {
        return Err(domain(format!("zonal_kernel needs n >= 2, got {n}")));
    }
    let mut e1 = vec![0u32; n];
    e1[0] = k;
    // coefficient of t^a s^b
    let mut ts: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (g, norm) in orthogonal_harmonic_basis(n, k) {
        let at_e1 = g.coeff(&e1);
        if at_e1.is_zero() {
            continue;
        }
        let w = at_e1 / norm;
        for (e, c) in g.terms() {
            if e[2..].iter().any(|&v| v != 0) {
                continue;
            }
            *ts.entry((e[0], e[1])).or_insert_with(Rational::zero) += &w * c;
        }
    }
    let one_minus_t2 = UniPoly::new(vec![int(1), int(0), int(-1)]);
    let mut q = UniPoly::zero();
    for ((a, b), c) in ts {
        if c.is_zero() {
            continue;
        }
        if b % 2 == 1 {
            return Err(Error::ReductionFailure(format!("odd power s^{b} survives in Z_{k} for n = {n}")));
        }
        let term = &UniPoly::monomial(c, a as usize) * &one_minus_t2.pow(b / 2);
        q = &q + &term;
    }
    let p = jacobi(n, k as usize)?;
    let alpha = q.eval(&Rational::one());
    if !alpha.is_positive() || q != p.scale(&alpha) {
        return Err(Error::ReductionFailure(format!("Z_{k} for n = {n} is not a positive multiple of P_{k}")));
    }
    Ok(q)
}

/// `(T p)(x) = avg_y (x·y) p(y)`, the integral operator of the inner
/// product kernel under the averaged measure.
pub fn apply_inner_product_kernel(p: &MultiPoly) -> MultiPoly {
    let n = p.n();
    (0..n).fold(MultiPoly::zero(n), |acc, i| {
        acc.add(&MultiPoly::var(n, i).scale(&sphere_average(&MultiPoly::var(n, i).mul(p))))
    })
}

/// `λ` with `T h = λ h`, if `h` is an eigenfunction.
pub fn kernel_eigenvalue_on(h: &MultiPoly) -> Option<Rational> {
    let th = apply_inner_product_kernel(h);
    let (e, c) = h.terms().iter().next()?;
    let lambda = th.coeff(e) / c;
    (th == h.scale(&lambda)).then_some(lambda)
}

/// Eigenvalue of the inner product kernel on the degree-1 harmonics.
pub fn inner_product_kernel_eigenvalue(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(domain(format!("inner product kernel needs n >= 2, got {n}")));
    }
    kernel_eigenvalue_on(&MultiPoly::var(n, 0)).ok_or_else(|| Error::ReductionFailure("x_1 is not an eigenfunction".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&x(3, 0).pow(2)), MultiPoly::constant(3, int(2)));
        assert!(laplacian(&x(3, 0).pow(2).sub(&x(3, 1).pow(2))).is_zero());
        // Δ(ω q) = 2(n + 2d) q + ω Δq for q = x1^2 x2 + x3^3, n = 3, d = 3
        let q = x(3, 0).pow(2).mul(&x(3, 1)).add(&x(3, 2).pow(3));
        let omega = MultiPoly::omega(3);
        let lhs = laplacian(&omega.mul(&q));
        let rhs = q.scale(&int(2 * (3 + 6))).add(&omega.mul(&laplacian(&q)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompose_examples() {
        let h = x(3, 0).mul(&x(3, 1));
        let parts = harmonic_decompose(&h).unwrap();
        assert_eq!(parts[0], h);
        assert!(parts[1].is_zero());

        let parts = harmonic_decompose(&MultiPoly::omega(3)).unwrap();
        assert!(parts[0].is_zero());
        assert_eq!(parts[1], MultiPoly::constant(3, int(1)));

        let parts = harmonic_decompose(&x(3, 0).pow(2)).unwrap();
        assert_eq!(parts[0], x(3, 0).pow(2).sub(&MultiPoly::omega(3).scale(&rat(1, 3))));
        assert_eq!(parts[1], MultiPoly::constant(3, rat(1, 3)));

        assert!(harmonic_decompose(&x(2, 0).add(&x(2, 1).pow(2))).is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(harm_dim(3, 2).unwrap(), 5);
        assert_eq!(harm_dim(3, 1).unwrap(), 3);
        assert_eq!(harm_dim(7, 0).unwrap(), 1);
        assert!(harm_dim(1, 3).is_err());
        assert_eq!(laplacian_kernel_dim(3, 2), 5);
    }

    #[test]
    fn averages() {
        assert_eq!(sphere_monomial_average(&[1, 2, 0]), int(0));
        for n in 2..8usize {
            let mut e = vec![0; n];
            e[0] = 2;
            assert_eq!(sphere_monomial_average(&e), rat(1, n as i64));
        }
        assert_eq!(sphere_monomial_average(&[4, 0, 0]), rat(1, 5));
        assert_eq!(sphere_average(&MultiPoly::omega(5).pow(3)), int(1));
    }

    #[test]
    fn adjoint_examples() {
        let one = MultiPoly::constant(2, int(1));
        assert_eq!(adjoint_check(&one, &x(2, 0).pow(2)).unwrap(), (int(1), int(1)));
        assert_eq!(adjoint_check(&MultiPoly::zero(2), &x(2, 0).pow(2)).unwrap(), (int(0), int(0)));
        assert!(adjoint_check(&x(2, 0), &x(2, 0).pow(2)).is_err());
        assert!(adjoint_check(&one, &x(2, 0)).is_err());
    }

    #[test]
    fn apolar_monomials() {
        let m = MultiPoly::monomial(vec![2, 1, 0], int(1));
        assert_eq!(apolar_inner(&m, &m).unwrap(), rat(2, 6));
        assert_eq!(apolar_inner(&m, &MultiPoly::monomial(vec![1, 2, 0], int(1))).unwrap(), int(0));
        assert!(apolar_inner(&m, &x(3, 0)).is_err());
    }

    #[test]
    fn zonal_examples() {
        assert_eq!(zonal_kernel(4, 0).unwrap(), UniPoly::constant(int(1)));
        for n in 2..6 {
            assert_eq!(zonal_kernel(n, 1).unwrap(), UniPoly::monomial(int(n as i64), 1));
        }
        let q = zonal_kernel(3, 2).unwrap();
        assert_eq!(q, jacobi(3, 2).unwrap().scale(&int(5)));
        assert!(zonal_kernel(1, 2).is_err());
    }

    #[test]
    fn inner_product_kernel() {
        assert_eq!(inner_product_kernel_eigenvalue(2).unwrap(), rat(1, 2));
        assert_eq!(inner_product_kernel_eigenvalue(3).unwrap(), rat(1, 3));
        let h2 = x(3, 0).mul(&x(3, 1));
        assert_eq!(kernel_eigenvalue_on(&h2), Some(int(0)));
    }
}
