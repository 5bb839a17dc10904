use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, from_bigint, int};
use crate::Rational;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Polynomial in `n` variables with rational coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        MultiPoly::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiPoly::monomial(e, Rational::one())
    }

    /// `x_1^2 + ... + x_n^2`.
    pub fn omega(n: usize) -> Self {
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            p.add_term(e, Rational::one());
        }
        p
    }

    /// Builds `Σ coeffs[i] x^{basis[i]}`.
    pub fn from_coeffs(n: usize, basis: &[Exponents], coeffs: &[Rational]) -> Self {
        let mut p = MultiPoly::zero(n);
        for (e, c) in basis.iter().zip(coeffs) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients on `basis`, typically [`monomials`] of one degree.
    pub fn coeffs_on(&self, basis: &[Exponents]) -> Vec<Rational> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        assert_eq!(exps.len(), self.n, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` if every term has degree `d`; zero is homogeneous of any
    /// degree and reports `None` in the inner option.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable count");
        let mut out = MultiPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(MultiPoly::constant(self.n, Rational::one()), |acc, _| acc.mul(self))
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e.iter().zip(x).fold(c.clone(), |m, (k, xi)| m * num_traits::pow(xi.clone(), *k as usize));
            acc + m
        })
    }

    /// `self(∇)` applied to `g`: each monomial `x^a` acts as `∂^a`.
    pub fn apply_as_operator(&self, g: &Self) -> Self {
        let mut out = MultiPoly::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &g.terms {
                if a.iter().zip(b).any(|(ai, bi)| ai > bi) {
                    continue;
                }
                // ∂^a x^b = Π b_i!/(b_i - a_i)! x^{b-a}
                let mut factor = Rational::one();
                for (ai, bi) in a.iter().zip(b) {
                    factor *= from_bigint(factorial(*bi) / factorial(bi - ai));
                }
                let e: Exponents = a.iter().zip(b).map(|(ai, bi)| bi - ai).collect();
                out.add_term(e, c * d * factor);
            }
        }
        out
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.n])
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographically decreasing order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponents> {
    fn go(i: usize, n: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            go(i + 1, n, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, n, d, &mut vec![0; n], &mut out);
    out
}
