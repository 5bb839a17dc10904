use num_complex::Complex;
use num_traits::{One, Zero};

use super::cube::{character_eval, hamming_distance, CubePoint};
use crate::error::{domain, Result};
use crate::Rational;

/// Values a cube function may take.
pub trait TableValue: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division by `2^k`.
    fn halve(&self, k: usize) -> Self;
}

impl TableValue for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn halve(&self, k: usize) -> Self {
        self / Rational::from_integer(num_bigint::BigInt::one() << k)
    }
}

impl TableValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn halve(&self, k: usize) -> Self {
        self / (2f64).powi(k as i32)
    }
}

impl<T: TableValue> TableValue for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn add(&self, other: &Self) -> Self {
        Complex::new(self.re.add(&other.re), self.im.add(&other.im))
    }
    fn sub(&self, other: &Self) -> Self {
        Complex::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }
    fn neg(&self) -> Self {
        Complex::new(self.re.neg(), self.im.neg())
    }
    fn halve(&self, k: usize) -> Self {
        Complex::new(self.re.halve(k), self.im.halve(k))
    }
}

/// A function on `{0,1}^n` stored by the integer encoding of its argument.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: TableValue> FunctionTable<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != 1usize << n {
            return Err(domain(format!("table of length {} for n = {n}", values.len())));
        }
        Ok(FunctionTable { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&CubePoint) -> T) -> Self {
        let values = (0..1usize << n).map(|i| f(&CubePoint::from_index(n, i))).collect();
        FunctionTable { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, x: &CubePoint) -> &T {
        &self.values[x.to_index()]
    }
}

impl FunctionTable<Rational> {
    pub fn character(y: &CubePoint) -> Self {
        let n = y.n();
        FunctionTable::from_fn(n, |x| Rational::from_integer(character_eval(y, x).unwrap().into()))
    }

    pub fn indicator(x: &CubePoint) -> Self {
        let idx = x.to_index();
        let values = (0..1usize << x.n())
            .map(|i| if i == idx { Rational::one() } else { <Rational as Zero>::zero() })
            .collect();
        FunctionTable { n: x.n(), values }
    }

    /// `(f, g) = 2^{-n} Σ_x f(x) g(x)` (real tables).
    pub fn inner(&self, other: &Self) -> Rational {
        let s: Rational = self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum();
        s.halve(self.n)
    }
}

fn butterfly<T: TableValue>(values: &mut [T], n: usize) {
    for i in 0..n {
        let h = 1usize << i;
        for block in (0..values.len()).step_by(2 * h) {
            for j in block..block + h {
                let a = values[j].clone();
                let b = values[j + h].clone();
                values[j] = a.add(&b);
                values[j + h] = a.sub(&b);
            }
        }
    }
}

/// Fourier coefficients `f̂(y) = 2^{-n} Σ_x f(x) χ_y(x)`, so that
/// `f = Σ_y f̂(y) χ_y`.
pub fn walsh_transform<T: TableValue>(f: &FunctionTable<T>) -> FunctionTable<T> {
    let mut values = f.values.clone();
    butterfly(&mut values, f.n);
    FunctionTable { n: f.n, values: values.iter().map(|v| v.halve(f.n)).collect() }
}

/// Rebuilds `f = Σ_y f̂(y) χ_y` from its coefficients.
pub fn inverse_walsh<T: TableValue>(coeffs: &FunctionTable<T>) -> FunctionTable<T> {
    let mut values = coeffs.values.clone();
    butterfly(&mut values, coeffs.n);
    FunctionTable { n: coeffs.n, values }
}

/// The `O(4^n)` direct sum, kept as a reference.
pub fn naive_walsh<T: TableValue>(f: &FunctionTable<T>) -> FunctionTable<T> {
    let n = f.n;
    let values = (0..1usize << n)
        .map(|y| {
            let sum = (0..1usize << n).fold(T::zero(), |acc, x| {
                if (x & y).count_ones() % 2 == 0 {
                    acc.add(&f.values[x])
                } else {
                    acc.sub(&f.values[x])
                }
            });
            sum.halve(n)
        })
        .collect();
    FunctionTable { n, values }
}

/// `Σ_{‖y‖=k} χ_y(x) χ_y(x')` for the pair `x = 0`, `x' = 1^t 0^{n-t}`,
/// summed over all weight-`k` characters.
pub fn zonal_sum(n: usize, k: usize, t: usize) -> Result<i64> {
    if k > n || t > n {
        return Err(domain(format!("zonal_sum needs k, t <= n; got n = {n}, k = {k}, t = {t}")));
    }
    let x = CubePoint::zero(n);
    let xp = CubePoint::new((0..n).map(|i| i < t).collect());
    debug_assert_eq!(hamming_distance(&x, &xp).unwrap(), t);
    let mut total = 0i64;
    for_each_subset(n, k, &mut |ys: &[usize]| {
        let y = CubePoint::new((0..n).map(|i| ys.contains(&i)).collect());
        total += (character_eval(&y, &x).unwrap() * character_eval(&y, &xp).unwrap()) as i64;
    });
    Ok(total)
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}
