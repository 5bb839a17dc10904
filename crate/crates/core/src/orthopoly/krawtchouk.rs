use num_traits::{One, Zero};

use crate::error::{domain, Result};
use num_bigint::BigInt;

use crate::exact::rational::{binomial, from_bigint, int, rat};
use crate::{Rational, UniPoly};

/// `binomial(base(t), i)` as a polynomial in `t`, where `base` is linear.
fn binomial_poly(base: &UniPoly, i: usize) -> UniPoly {
    let mut acc = UniPoly::constant(Rational::one());
    for j in 0..i {
        let factor = base - &UniPoly::constant(int(j as i64));
        acc = &acc * &factor;
    }
    let fact = (1..=i as i64).fold(Rational::one(), |a, v| a * int(v));
    acc.scale(&fact.recip())
}

/// `K^n_k(t) = Σ_i (-1)^i C(t, i) C(n - t, k - i)`, expanded symbolically.
pub fn krawtchouk(n: usize, k: usize) -> Result<UniPoly> {
    if k > n {
        return Err(domain(format!("krawtchouk: k = {k} exceeds n = {n}")));
    }
    let t = UniPoly::t();
    let n_minus_t = &UniPoly::constant(int(n as i64)) - &t;
    let mut acc = UniPoly::zero();
    for i in 0..=k {
        let term = &binomial_poly(&t, i) * &binomial_poly(&n_minus_t, k - i);
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Krawtchouk polynomials `K^n_0, ..., K^n_n`, precomputed at construction.
#[derive(Clone, Debug)]
pub struct KrawtchoukFamily {
    n: usize,
    polys: Vec<UniPoly>,
}

impl KrawtchoukFamily {
    /// Built by the three-term recurrence
    /// `(k + 1) K_{k+1} = (n - 2t) K_k - (n - k + 1) K_{k-1}`.
    pub fn new(n: usize) -> Self {
        let nn = n as i64;
        let lin = UniPoly::new(vec![int(nn), int(-2)]);
        let mut polys = vec![UniPoly::constant(Rational::one())];
        if n >= 1 {
            polys.push(lin.clone());
        }
        for k in 1..n {
            let kk = k as i64;
            let next = &(&lin * &polys[k]) - &polys[k - 1].scale(&int(nn - kk + 1));
            polys.push(next.scale(&rat(1, kk + 1)));
        }
        KrawtchoukFamily { n, polys }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize) -> Option<&UniPoly> {
        self.polys.get(k)
    }

    /// `K^n_k(t)` at an integer distance.
    pub fn value(&self, k: usize, t: usize) -> Rational {
        self.polys[k].eval(&int(t as i64))
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }
}

/// Integer values `K^n_k(t)` for `0 <= k, t <= n`, indexed `[k][t]`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<BigInt>> {
    let nn = n as i64;
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for t in 0..=n {
        let lin = BigInt::from(nn - 2 * t as i64);
        table[0][t] = BigInt::one();
        if n >= 1 {
            table[1][t] = lin.clone();
        }
        for k in 1..n {
            let kk = k as i64;
            let num = &lin * &table[k][t] - BigInt::from(nn - kk + 1) * &table[k - 1][t];
            table[k + 1][t] = num / BigInt::from(kk + 1);
        }
    }
    table
}

/// `Σ_t C(n, t) K^n_k(t) K^n_{k'}(t)`.
pub fn krawtchouk_gram(n: usize, k: usize, k2: usize) -> Result<Rational> {
    let a = krawtchouk(n, k)?;
    let b = krawtchouk(n, k2)?;
    Ok(gram_of(n, &a, &b))
}

pub(crate) fn gram_of(n: usize, a: &UniPoly, b: &UniPoly) -> Rational {
    (0..=n).fold(Rational::zero(), |acc, t| {
        let tt = int(t as i64);
        acc + from_bigint(binomial(n as i64, t as i64)) * a.eval(&tt) * b.eval(&tt)
    })
}
