//! Exact Sturm-sequence sign analysis on closed intervals.

use num_traits::{Signed, Zero};

use super::Rational;
use crate::UniPoly;

/// Square-free part `p / gcd(p, p')`, normalized monic.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    let g = p.gcd(&p.derivative());
    let (q, _) = p.div_rem(&g);
    monic(&q)
}

fn monic(p: &UniPoly) -> UniPoly {
    match p.leading() {
        Some(l) => p.scale(&l.recip()),
        None => p.clone(),
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...`; every member is rescaled by a
/// positive constant, which leaves sign variations unchanged.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = Vec::new();
    if p.is_zero() {
        return seq;
    }
    let positive_monic = |q: &UniPoly| q.scale(&q.leading().unwrap().abs().recip());
    seq.push(positive_monic(p));
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(positive_monic(&d));
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(positive_monic(&-&r));
    }
    seq
}

/// Sign variations of the chain at `x`, zeros skipped.
pub fn sign_variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Chain of a square-free polynomial, with root counting helpers.
pub struct SturmChain {
    poly: UniPoly,
    seq: Vec<UniPoly>,
}

impl SturmChain {
    /// Builds the chain of the square-free part of `p` (`p` must be nonzero).
    pub fn new(p: &UniPoly) -> Self {
        let poly = squarefree_part(p);
        let seq = sturm_sequence(&poly);
        SturmChain { poly, seq }
    }

    pub fn squarefree(&self) -> &UniPoly {
        &self.poly
    }

    pub fn is_root(&self, x: &Rational) -> bool {
        self.poly.eval(x).is_zero()
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        sign_variations(&self.seq, a) - sign_variations(&self.seq, b)
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        self.count_half_open(a, b) - usize::from(self.is_root(b))
    }
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(2.into())
}

/// A rational point of `[a, b]` where `p > 0`, or `None` when `p <= 0` on
/// the whole interval. Decided exactly.
pub fn find_positive_point(p: &UniPoly, a: &Rational, b: &Rational) -> Option<Rational> {
    assert!(a <= b, "find_positive_point: a > b");
    if p.is_zero() {
        return None;
    }
    if p.eval(a).is_positive() {
        return Some(a.clone());
    }
    if p.eval(b).is_positive() {
        return Some(b.clone());
    }
    if a == b || p.degree() == Some(0) {
        return None;
    }
    let chain = SturmChain::new(p);
    // Endpoints of every interval on the stack have already been checked
    // to satisfy p <= 0.
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((l, r)) = stack.pop() {
        let roots = chain.count_open(&l, &r);
        let isolated = roots == 1 && !chain.is_root(&l) && !chain.is_root(&r);
        if isolated {
            // sign of p on each side of the single root equals its (negative)
            // sign at the corresponding endpoint
            continue;
        }
        let m = midpoint(&l, &r);
        if p.eval(&m).is_positive() {
            return Some(m);
        }
        if roots == 0 {
            continue;
        }
        stack.push((m.clone(), r));
        stack.push((l, m));
    }
    None
}

/// `true` iff `p(t) <= 0` for every `t` in `[a, b]`.
///
/// Roots where `p` touches zero from below are allowed.
pub fn sturm_nonpositive(p: &UniPoly, a: &Rational, b: &Rational) -> bool {
    find_positive_point(p, a, b).is_none()
}

/// Isolating intervals `[lo, hi]` (width at most `width`) for the distinct
/// real roots of `p` in the open interval `(a, b)`, in increasing order.
/// Rational roots hit during bisection are returned as `lo == hi`.
pub fn isolate_roots(p: &UniPoly, a: &Rational, b: &Rational, width: &Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 || a >= b {
        return out;
    }
    let chain = SturmChain::new(p);
    let q = chain.squarefree().clone();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((l, r)) = stack.pop() {
        let roots = chain.count_open(&l, &r);
        if roots == 0 {
            continue;
        }
        if roots == 1 && !chain.is_root(&l) && !chain.is_root(&r) {
            let (lo, hi) = refine(&q, l, r, width);
            out.push((lo, hi));
            continue;
        }
        let m = midpoint(&l, &r);
        if chain.is_root(&m) {
            out.push((m.clone(), m.clone()));
        }
        stack.push((m.clone(), r));
        stack.push((l, m));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

// Bisection on a sign change of the square-free q.
fn refine(q: &UniPoly, mut l: Rational, mut r: Rational, width: &Rational) -> (Rational, Rational) {
    let left_positive = q.eval(&l).is_positive();
    while &(&r - &l) > width {
        let m = midpoint(&l, &r);
        let v = q.eval(&m);
        if v.is_zero() {
            return (m.clone(), m);
        }
        if v.is_positive() == left_positive {
            l = m;
        } else {
            r = m;
        }
    }
    (l, r)
}
