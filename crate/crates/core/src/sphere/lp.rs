use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::certificate::Certificate;
use crate::error::{domain, Error, Result};
use crate::exact::rational::{from_f64, int, rat, simplest_between, to_f64};
use crate::exact::sturm::{find_positive_point, isolate_roots};
use crate::lp::{LpStatus, RowGenerationLp};
use crate::orthopoly::JacobiFamily;
use crate::{Rational, UniPoly};

/// Tuning of the exchange method behind [`dgs_lp_bound`].
#[derive(Clone, Debug)]
pub struct SphereLpOptions {
    /// Equispaced initial constraint points on `[-1, cos_theta]`.
    pub grid_points: usize,
    pub max_iterations: usize,
    /// Each located maximum also contributes the simplest rational within
    /// this distance; optimal polynomials tend to touch `-1` at such points.
    pub snap_radius: Rational,
    /// Width to which critical points are isolated.
    pub root_width: Rational,
}

impl Default for SphereLpOptions {
    fn default() -> Self {
        SphereLpOptions {
            grid_points: 64,
            max_iterations: 50,
            snap_radius: rat(1, 1000),
            root_width: Rational::new(1.into(), num_bigint::BigInt::one() << 48),
        }
    }
}

/// Degree used when the caller gives none: 2 for orthogonal codes, 10 else.
pub fn default_degree(cos_theta: &Rational) -> usize {
    if cos_theta.is_zero() {
        2
    } else {
        10
    }
}

/// LP bound for codes in `S^{n-1}` with pairwise inner products at most
/// `cos_theta`, minimizing `1 + Σ f_k` over `f >= 0` with
/// `Σ f_k P_k(t) <= -1` on all of `[-1, cos_theta]`, `k <= degree`.
pub fn dgs_lp_bound(n: usize, cos_theta: &Rational, degree: usize) -> Result<Certificate> {
    dgs_lp_bound_with(n, cos_theta, degree, &SphereLpOptions::default())
}

/// Fixed data of one bound computation.
struct Exchange<'a> {
    family: JacobiFamily,
    derivatives: Vec<UniPoly>,
    degree: usize,
    cos_theta: &'a Rational,
    opts: &'a SphereLpOptions,
}

/// The LP restricted to finitely many constraint points.
#[derive(Clone)]
struct Restricted {
    lp: RowGenerationLp,
    points: BTreeSet<Rational>,
    /// constraint point of each value row, in insertion order; `None` for
    /// tangency rows
    rows: Vec<Option<Rational>>,
    /// points whose derivative condition is already imposed
    tangent: BTreeSet<Rational>,
}

impl Restricted {
    fn new(degree: usize) -> Result<Self> {
        Ok(Restricted {
            lp: RowGenerationLp::new(vec![Rational::one(); degree + 1], Rational::one())?,
            points: BTreeSet::new(),
            rows: Vec::new(),
            tangent: BTreeSet::new(),
        })
    }

    fn add_point(&mut self, ex: &Exchange, t: Rational) -> Result<LpStatus> {
        if !self.points.insert(t.clone()) {
            return Ok(self.lp.status());
        }
        let row = (0..=ex.degree).map(|k| ex.family.value(k, &t)).collect();
        self.rows.push(Some(t));
        self.lp.add_row(row, int(-1))
    }

    fn add_points(&mut self, ex: &Exchange, ts: &[Rational]) -> Result<LpStatus> {
        for t in ts {
            if self.add_point(ex, t.clone())? == LpStatus::Infeasible {
                return Ok(LpStatus::Infeasible);
            }
        }
        Ok(self.lp.status())
    }

    /// `F'(t) = 0` as two rows.
    fn add_tangency(&mut self, ex: &Exchange, t: &Rational) -> Result<LpStatus> {
        let row: Vec<Rational> = ex.derivatives.iter().map(|d| d.eval(t)).collect();
        let neg = row.iter().map(|v| -v).collect();
        if self.add_plain(row)? == LpStatus::Infeasible {
            return Ok(LpStatus::Infeasible);
        }
        self.add_plain(neg)
    }

    fn add_plain(&mut self, row: Vec<Rational>) -> Result<LpStatus> {
        self.rows.push(None);
        self.lp.add_row(row, Rational::zero())
    }
    fn values(&self) -> Vec<Rational> {
        self.lp.solution().values.expect("optimal")
    }

    fn objective(&self) -> Option<Rational> {
        self.lp.solution().objective
    }

    /// Imposes `F' = 0` at the interior points carrying dual weight, and
    /// the matching one-sided condition at a weighted endpoint. Any feasible
    /// `F` with the same objective touches `-1` there from below.
    fn impose_tangency(&mut self, ex: &Exchange) -> Result<LpStatus> {
        let Some(duals) = self.lp.solution().duals else {
            return Ok(self.lp.status());
        };
        let minus_one = -Rational::one();
        let touching: Vec<Rational> = self
            .rows
            .iter()
            .zip(&duals)
            .filter_map(|(t, y)| t.as_ref().filter(|_| !y.is_zero()).cloned())
            .collect();
        for t in touching {
            if !self.tangent.insert(t.clone()) {
                continue;
            }
            let status = if t == minus_one {
                self.add_plain(ex.derivatives.iter().map(|d| d.eval(&t)).collect())?
            } else if t == *ex.cos_theta {
                self.add_plain(ex.derivatives.iter().map(|d| -d.eval(&t)).collect())?
            } else {
                self.add_tangency(ex, &t)?
            };
            if status == LpStatus::Infeasible {
                return Ok(status);
            }
        }
        Ok(self.lp.status())
    }
}

impl Exchange<'_> {
    /// `None` if `F + 1 <= 0` on the interval, else new constraint points:
    /// a witness, every positive local maximum, and a short rational near
    /// each maximum.
    fn cuts(&self, coeffs: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let minus_one = -Rational::one();
        let f = self.family.combination(coeffs)?;
        let q = &f + &UniPoly::constant(Rational::one());
        let Some(witness) = find_positive_point(&q, &minus_one, self.cos_theta) else {
            return Ok(None);
        };
        let mut fresh = vec![witness];
        for (lo, hi) in isolate_roots(&f.derivative(), &minus_one, self.cos_theta, &self.opts.root_width) {
            let m = simplest_between(&lo, &hi);
            if q.eval(&m).is_positive() || q.eval(&lo).is_positive() || q.eval(&hi).is_positive() {
                let lo_snap = (&m - &self.opts.snap_radius).max(minus_one.clone());
                let hi_snap = (&m + &self.opts.snap_radius).min(self.cos_theta.clone());
                fresh.push(simplest_between(&lo_snap, &hi_snap));
                fresh.push(m);
            }
        }
        Ok(Some(fresh))
    }
}

const POLISH_ROUNDS: usize = 4;

impl<'a> Exchange<'a> {
    fn new(n: usize, cos_theta: &'a Rational, degree: usize, opts: &'a SphereLpOptions) -> Result<Self> {
        let family = JacobiFamily::new(n, degree)?;
        let derivatives = (0..=degree).map(|k| family.get(k).expect("cached").derivative()).collect();
        Ok(Exchange { family, derivatives, degree, cos_theta, opts })
    }

    /// The LP over the initial grid only, or `None` if already infeasible.
    fn grid_lp(&self) -> Result<Option<Restricted>> {
        let minus_one = -Rational::one();
        let mut lp = Restricted::new(self.degree)?;
        let g = self.opts.grid_points.max(2);
        let step = (self.cos_theta - &minus_one) / int(g as i64 - 1);
        let grid: Vec<Rational> = (0..g).map(|j| &minus_one + &step * int(j as i64)).collect();
        Ok(match lp.add_points(self, &grid)? {
            LpStatus::Infeasible => None,
            _ => Some(lp),
        })
    }

    /// Cutting-plane loop. `Ok(Ok(f))` is a valid `F`; `Ok(Err(f))` is the
    /// last relaxed solution after the iteration budget ran out. Whenever a
    /// relaxation stalls, `on_stall` gets its value and may supply a valid
    /// `F` attaining it.
    fn solve(
        &self,
        mut main: Restricted,
        on_stall: &mut dyn FnMut(&Rational) -> Result<Option<Vec<Rational>>>,
    ) -> Result<std::result::Result<Vec<Rational>, Vec<Rational>>> {
        let infeasible = || Error::InfeasibleAtDegree { degree: self.degree };
        for _ in 0..self.opts.max_iterations {
            let coeffs = main.values();
            let Some(mut cuts) = self.cuts(&coeffs)? else {
                return Ok(Ok(coeffs));
            };
            // the relaxation value is a lower bound; a valid F attaining it is optimal
            let lower = main.objective().expect("optimal");
            let mut polish = main.clone();
            for _ in 0..POLISH_ROUNDS {
                if polish.impose_tangency(self)? == LpStatus::Infeasible || polish.objective().as_ref() != Some(&lower) {
                    break;
                }
                let pc = polish.values();
                match self.cuts(&pc)? {
                    None => return Ok(Ok(pc)),
                    Some(more) => {
                        if polish.add_points(self, &more)? == LpStatus::Infeasible {
                            break;
                        }
                        cuts.extend(more);
                    }
                }
            }
            if let Some(f) = on_stall(&lower)? {
                return Ok(Ok(f));
            }
            if main.add_points(self, &cuts)? == LpStatus::Infeasible {
                return Err(infeasible());
            }
        }
        Ok(Err(main.values()))
    }
}

/// What is known about the LP at one lower degree.
enum Lower {
    Untried,
    /// grid relaxation value, a lower bound for that degree
    Relaxed(Rational, Restricted),
    Solved(Option<Vec<Rational>>),
    Useless,
}

pub fn dgs_lp_bound_with(n: usize, cos_theta: &Rational, degree: usize, opts: &SphereLpOptions) -> Result<Certificate> {
    let minus_one = -Rational::one();
    if n < 2 || degree < 1 || *cos_theta <= minus_one || *cos_theta >= Rational::one() {
        return Err(domain(format!(
            "sphere LP needs n >= 2, degree >= 1, -1 < cos_theta < 1; got n = {n}, degree = {degree}"
        )));
    }
    let ex = Exchange::new(n, cos_theta, degree, opts)?;
    let Some(main) = ex.grid_lp()? else {
        return Err(Error::InfeasibleAtDegree { degree });
    };

    // Optima above the minimal degree are rarely unique and the relaxation
    // creeps, while a lower-degree optimum padded with zeros stays valid.
    let mut lower: Vec<Lower> = (0..degree).map(|_| Lower::Untried).collect();
    let mut on_stall = |target: &Rational| -> Result<Option<Vec<Rational>>> {
        for d in 1..degree {
            if let Lower::Untried = lower[d] {
                let sub = Exchange::new(n, cos_theta, d, opts)?;
                lower[d] = match sub.grid_lp()? {
                    Some(lp) => Lower::Relaxed(lp.objective().expect("optimal"), lp),
                    None => Lower::Useless,
                };
            }
            if let Lower::Relaxed(value, _) = &lower[d] {
                if value > target {
                    continue;
                }
                let Lower::Relaxed(_, lp) = std::mem::replace(&mut lower[d], Lower::Useless) else {
                    unreachable!()
                };
                let sub = Exchange::new(n, cos_theta, d, opts)?;
                lower[d] = Lower::Solved(match sub.solve(lp, &mut |_| Ok(None)) {
                    Ok(found) => found.ok(),
                    Err(Error::InfeasibleAtDegree { .. }) => None,
                    Err(e) => return Err(e),
                });
            }
            if let Lower::Solved(Some(f)) = &lower[d] {
                if f.iter().fold(Rational::one(), |acc, c| acc + c) == *target {
                    let mut padded = f.clone();
                    padded.resize(degree + 1, Rational::zero());
                    return Ok(Some(padded));
                }
            }
        }
        Ok(None)
    };
    match ex.solve(main, &mut on_stall)? {
        Ok(f) => Ok(certificate(n, cos_theta, degree, f)),
        Err(f) => repair(n, cos_theta, degree, &ex.family, f),
    }
}

fn certificate(n: usize, cos_theta: &Rational, degree: usize, coeffs: Vec<Rational>) -> Certificate {
    let bound = coeffs.iter().fold(Rational::one(), |acc, c| acc + c);
    Certificate { space: "sphere".into(), n, cos_theta: cos_theta.clone(), degree, coeffs, bound }
}

/// Scales a nearly feasible `F` by `1 / (1 - v)` where `F + 1 <= v` on the
/// interval, yielding a valid but slightly weaker certificate.
fn repair(n: usize, cos_theta: &Rational, degree: usize, family: &JacobiFamily, coeffs: Vec<Rational>) -> Result<Certificate> {
    let minus_one = -Rational::one();
    let f = family.combination(&coeffs)?;
    let ff = f.map(to_f64);
    let (a, b) = (-1.0, to_f64(cos_theta));
    let samples = 4096;
    let vmax = (0..=samples)
        .map(|i| ff.eval(&(a + (b - a) * i as f64 / samples as f64)) + 1.0)
        .fold(0.0f64, f64::max);
    let mut v = vmax * 1.01 + 1e-12;
    while v < 1.0 {
        let v_r = from_f64(v).ok_or_else(|| Error::NumericalBreakdown("non-finite violation".into()))?;
        let lambda = Rational::one() / (Rational::one() - v_r);
        let scaled: Vec<Rational> = coeffs.iter().map(|c| c * &lambda).collect();
        let q = &family.combination(&scaled)? + &UniPoly::constant(Rational::one());
        if find_positive_point(&q, &minus_one, cos_theta).is_none() {
            return Ok(certificate(n, cos_theta, degree, scaled));
        }
        v = v * 2.0 + 1e-9;
    }
    Err(Error::NumericalBreakdown(format!(
        "exchange method did not converge for n = {n}, degree = {degree}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::verify_certificate;

    #[test]
    fn cross_polytope_degree_two() {
        for n in 2..8usize {
            let nn = n as i64;
            let cert = dgs_lp_bound(n, &int(0), 2).unwrap();
            assert_eq!(cert.bound, int(2 * nn));
            assert_eq!(cert.coeffs, vec![int(0), int(nn), int(nn - 1)]);
            assert!(verify_certificate(&cert));
        }
    }

    #[test]
    fn infeasible_at_low_degree() {
        assert!(matches!(dgs_lp_bound(3, &rat(1, 2), 1), Err(Error::InfeasibleAtDegree { degree: 1 })));
    }

    #[test]
    fn domain_errors() {
        assert!(dgs_lp_bound(1, &int(0), 2).is_err());
        assert!(dgs_lp_bound(3, &int(1), 2).is_err());
        assert!(dgs_lp_bound(3, &int(0), 0).is_err());
    }

    #[test]
    fn hexagon_in_the_plane() {
        let cert = dgs_lp_bound(2, &rat(1, 2), 6).unwrap();
        assert!(verify_certificate(&cert));
        assert_eq!(cert.bound, int(6));
    }

    #[test]
    fn kissing_in_dimension_eight_above_minimal_degree() {
        for degree in [6, 8, 10] {
            let cert = dgs_lp_bound(8, &rat(1, 2), degree).unwrap();
            assert_eq!(cert.bound, int(240));
            assert!(verify_certificate(&cert));
        }
    }

    #[test]
    fn default_degrees() {
        assert_eq!(default_degree(&int(0)), 2);
        assert_eq!(default_degree(&rat(1, 2)), 10);
    }
}
