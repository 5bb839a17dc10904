use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::problem::{Basis, LpProblem, LpSolution, LpStatus, Relation, Sense};
use crate::error::{domain, Error, Result};
use crate::Rational;

/// `min offset + c·x` over `x >= 0` and rows `a·x <= b` that arrive one at a
/// time, with `c >= 0`, solved exactly.
///
/// With nonnegative costs the all-slack basis is dual feasible, and adding a
/// row keeps it so. Each new row is absorbed by dual simplex pivots, so a
/// nested family of LPs costs only the pivots each extra row forces.
///
/// The tableau is kept fraction free: every stored entry is `det(B)` times
/// the true entry, so a pivot costs two products and one exact division per
/// entry.
#[derive(Clone, Debug)]
pub struct RowGenerationLp {
    costs: Vec<Rational>,
    offset: Rational,
    constraints: Vec<(Vec<Rational>, Rational)>,
    /// positive factor that made row `i` integral
    row_scale: Vec<BigInt>,
    /// positive factor that made the costs integral
    cost_scale: BigInt,
    tab: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    reduced: Vec<BigInt>,
    basis: Vec<usize>,
    det: BigInt,
    infeasible: bool,
    pivots: usize,
}

fn lcm_of_denominators<'a>(vals: impl Iterator<Item = &'a Rational>) -> BigInt {
    vals.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scaled(v: &Rational, s: &BigInt) -> BigInt {
    (v * Rational::from_integer(s.clone())).to_integer()
}

/// Sign of `a / b` compared with `c / d` for positive `b`, `d`.
fn ratio_less(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    a * d < c * b
}

impl RowGenerationLp {
    pub fn new(costs: Vec<Rational>, offset: Rational) -> Result<Self> {
        if costs.iter().any(|c| c.is_negative()) {
            return Err(domain("row generation needs nonnegative costs"));
        }
        let cost_scale = lcm_of_denominators(costs.iter());
        Ok(RowGenerationLp {
            reduced: costs.iter().map(|c| scaled(c, &cost_scale)).collect(),
            cost_scale,
            costs,
            offset,
            constraints: Vec::new(),
            row_scale: Vec::new(),
            tab: Vec::new(),
            rhs: Vec::new(),
            basis: Vec::new(),
            det: BigInt::one(),
            infeasible: false,
            pivots: 0,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.costs.len()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.len()
    }

    /// Total dual simplex pivots so far.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Adds `a·x <= b` and reoptimizes.
    pub fn add_row(&mut self, a: Vec<Rational>, b: Rational) -> Result<LpStatus> {
        let n = self.num_vars();
        if a.len() != n {
            return Err(Error::ShapeMismatch(format!("row of length {} for {n} variables", a.len())));
        }
        let lambda = lcm_of_denominators(a.iter().chain(std::iter::once(&b)));
        for row in self.tab.iter_mut() {
            row.push(BigInt::zero());
        }
        self.reduced.push(BigInt::zero());
        let slack = n + self.constraints.len();
        // det(B) times the row expressed in the current basis
        let mut row: Vec<BigInt> = a.iter().map(|v| scaled(v, &lambda) * &self.det).collect();
        row.resize(slack + 1, BigInt::zero());
        row[slack] = self.det.clone();
        let mut rhs = scaled(&b, &lambda) * &self.det;
        let orig: Vec<BigInt> = a.iter().map(|v| scaled(v, &lambda)).collect();
        for (i, &bc) in self.basis.iter().enumerate() {
            let f = if bc < n { orig[bc].clone() } else { BigInt::zero() };
            if f.is_zero() {
                continue;
            }
            for (v, w) in row.iter_mut().zip(&self.tab[i]) {
                if !w.is_zero() {
                    *v -= &f * w;
                }
            }
            rhs -= &f * &self.rhs[i];
        }
        self.constraints.push((a, b));
        self.row_scale.push(lambda);
        self.tab.push(row);
        self.rhs.push(rhs);
        self.basis.push(slack);
        if !self.infeasible {
            self.infeasible = !self.reoptimize();
        }
        Ok(self.status())
    }

    pub fn status(&self) -> LpStatus {
        if self.infeasible {
            LpStatus::Infeasible
        } else {
            LpStatus::Optimal
        }
    }

    /// Sign of a true entry from its stored value.
    fn true_sign(&self, v: &BigInt) -> Sign {
        match (v.sign(), self.det.sign()) {
            (Sign::NoSign, _) => Sign::NoSign,
            (s, Sign::Plus) => s,
            (Sign::Plus, _) => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    fn reoptimize(&mut self) -> bool {
        loop {
            // smallest basic index among infeasible rows: the dual of
            // Bland's rule, which cannot cycle
            let leaving = (0..self.tab.len())
                .filter(|&i| self.true_sign(&self.rhs[i]) == Sign::Minus)
                .min_by_key(|&i| self.basis[i]);
            let Some(r) = leaving else {
                return true;
            };
            // ratio reduced_j / -tab_rj; the det factor cancels
            let mut best: Option<usize> = None;
            for (j, a) in self.tab[r].iter().enumerate() {
                if self.true_sign(a) != Sign::Minus {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => ratio_less(
                        &self.reduced[j].abs(),
                        &a.abs(),
                        &self.reduced[b].abs(),
                        &self.tab[r][b].abs(),
                    ),
                };
                if better {
                    best = Some(j);
                }
            }
            let Some(c) = best else {
                return false;
            };
            self.pivot(r, c);
            self.pivots += 1;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.tab[r][c].clone();
        let prow = std::mem::take(&mut self.tab[r]);
        let prhs = self.rhs[r].clone();
        let det = self.det.clone();
        let update = |row: &mut Vec<BigInt>, rhs: &mut BigInt| {
            let f = row[c].clone();
            for (j, v) in row.iter_mut().enumerate() {
                let mut t = &p * &*v;
                if !f.is_zero() && !prow[j].is_zero() {
                    t -= &f * &prow[j];
                }
                *v = t / &det;
            }
            let mut t = &p * &*rhs;
            if !f.is_zero() {
                t -= &f * &prhs;
            }
            *rhs = t / &det;
        };
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i != r {
                update(row, &mut self.rhs[i]);
            }
        }
        let mut dummy = BigInt::zero();
        update(&mut self.reduced, &mut dummy);
        self.tab[r] = prow;
        self.basis[r] = c;
        self.det = p;
    }

    /// Current basic solution with its duals (`y_i <= 0`, min form).
    pub fn solution(&self) -> LpSolution<Rational> {
        if self.infeasible {
            return LpSolution::infeasible();
        }
        let n = self.num_vars();
        let det = Rational::from_integer(self.det.clone());
        let mut values = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                values[b] = Rational::from_integer(self.rhs[i].clone()) / &det;
            }
        }
        let cost_scale = Rational::from_integer(self.cost_scale.clone());
        let duals = (0..self.num_rows())
            .map(|i| {
                let d_slack = Rational::from_integer(self.reduced[n + i].clone()) / &det;
                -d_slack * Rational::from_integer(self.row_scale[i].clone()) / &cost_scale
            })
            .collect();
        let mut structural: Vec<usize> = self.basis.iter().copied().filter(|&b| b < n).collect();
        structural.sort_unstable();
        let tight_rows = (0..self.num_rows()).filter(|i| !self.basis.contains(&(n + i))).collect();
        let objective = self.problem().objective_at(&values);
        LpSolution {
            status: LpStatus::Optimal,
            values: Some(values),
            objective: Some(objective),
            duals: Some(duals),
            basis: Some(Basis { structural, tight_rows }),
        }
    }

    /// The rows so far as an ordinary [`LpProblem`].
    pub fn problem(&self) -> LpProblem<Rational> {
        let mut p = LpProblem::new(Sense::Minimize, self.costs.clone()).with_offset(self.offset.clone());
        for (a, b) in &self.constraints {
            p.add_row(a.clone(), Relation::Le, b.clone());
        }
        p
    }
}
