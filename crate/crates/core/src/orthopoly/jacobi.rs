use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::rational::{int, rat};
use crate::{Rational, UniPoly};

/// Normalized Jacobi polynomial `P_k^{(α,α)}` with `α = (n-3)/2` and
/// `P_k(1) = 1`, from the recurrence
/// `(k + n - 2) P_{k+1} = (2k + n - 2) t P_k - k P_{k-1}`.
pub fn jacobi(n: usize, k: usize) -> Result<UniPoly> {
    Ok(jacobi_up_to(n, k)?.pop().expect("nonempty"))
}

fn jacobi_up_to(n: usize, max_degree: usize) -> Result<Vec<UniPoly>> {
    if n < 2 {
        return Err(domain(format!("jacobi: ambient dimension n = {n} must be at least 2")));
    }
    let t = UniPoly::t();
    let mut polys = vec![UniPoly::constant(Rational::one())];
    if max_degree >= 1 {
        polys.push(t.clone());
    }
    let n = n as i64;
    for k in 1..max_degree {
        let kk = k as i64;
        let a = rat(2 * kk + n - 2, kk + n - 2);
        let b = rat(kk, kk + n - 2);
        let next = &(&t * &polys[k]).scale(&a) - &polys[k - 1].scale(&b);
        polys.push(next);
    }
    Ok(polys)
}

fn check_odd(n: usize) -> Result<usize> {
    if n < 3 || n % 2 == 0 {
        return Err(domain(format!(
            "exact Jacobi integrals need odd n >= 3 (integer α); got n = {n}"
        )));
    }
    Ok((n - 3) / 2)
}

/// `∫_{-1}^{1} p(t) (1 - t^2)^alpha dt` for integer `alpha`.
fn weighted_integral(p: &UniPoly, alpha: usize) -> Rational {
    let weight = UniPoly::new(vec![int(1), int(0), int(-1)]).pow(alpha as u32);
    let prod = p * &weight;
    prod.coeffs().iter().enumerate().fold(Rational::zero(), |acc, (m, c)| {
        if m % 2 == 1 {
            acc
        } else {
            acc + c * rat(2, m as i64 + 1)
        }
    })
}

/// `∫_{-1}^{1} P_k P_{k'} (1 - t^2)^α dt`, exact for odd `n >= 3`.
pub fn jacobi_gram(n: usize, k: usize, k2: usize) -> Result<Rational> {
    let alpha = check_odd(n)?;
    let polys = jacobi_up_to(n, k.max(k2))?;
    Ok(weighted_integral(&(&polys[k] * &polys[k2]), alpha))
}

/// Independent construction for odd `n`: Gram–Schmidt of `1, t, t^2, ...`
/// against the weight `(1 - t^2)^α`, renormalized to `P_k(1) = 1`.
pub fn jacobi_gram_schmidt(n: usize, max_degree: usize) -> Result<Vec<UniPoly>> {
    let alpha = check_odd(n)?;
    let mut basis: Vec<(UniPoly, Rational)> = Vec::new();
    for k in 0..=max_degree {
        let mut p = UniPoly::monomial(Rational::one(), k);
        for (q, qq) in &basis {
            let proj = weighted_integral(&(&p * q), alpha) / qq;
            p = &p - &q.scale(&proj);
        }
        let at_one = p.eval(&Rational::one());
        let p = p.scale(&at_one.recip());
        let norm = weighted_integral(&(&p * &p), alpha);
        basis.push((p, norm));
    }
    Ok(basis.into_iter().map(|(p, _)| p).collect())
}

/// Normalized Jacobi polynomials `P_0, ..., P_D` for a fixed ambient dimension.
#[derive(Clone, Debug)]
pub struct JacobiFamily {
    n: usize,
    polys: Vec<UniPoly>,
}

impl JacobiFamily {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        Ok(JacobiFamily { n, polys: jacobi_up_to(n, max_degree)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&UniPoly> {
        self.polys.get(k)
    }

    pub fn value(&self, k: usize, t: &Rational) -> Rational {
        self.polys[k].eval(t)
    }

    /// `Σ_k coeffs[k] P_k` (coefficients beyond the cached degree are an error).
    pub fn combination(&self, coeffs: &[Rational]) -> Result<UniPoly> {
        if coeffs.len() > self.polys.len() {
            return Err(domain(format!(
                "combination of degree {} exceeds cached degree {}",
                coeffs.len() - 1,
                self.max_degree()
            )));
        }
        Ok(coeffs
            .iter()
            .zip(&self.polys)
            .fold(UniPoly::zero(), |acc, (c, p)| &acc + &p.scale(c)))
    }
}
