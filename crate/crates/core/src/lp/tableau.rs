use super::problem::{Basis, LpProblem, LpSolution, LpStatus, Relation, Sense};
use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variable; terminates on every input.
    Bland,
    /// Most negative reduced cost; ties in the ratio test go to the smallest index.
    Dantzig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

/// Dense tableau over the standard form `A' x' = b'`, `b' >= 0`.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    kinds: Vec<ColumnKind>,
    basis: Vec<usize>,
    /// column that formed the identity for each row at the start
    initial_column: Vec<usize>,
    /// slack/surplus column of each row, if any
    logical_column: Vec<Option<usize>>,
    /// +1 or -1: the factor applied to make the rhs nonnegative
    row_sign: Vec<bool>,
    reduced: Vec<T>,
    objective: T,
    n_struct: usize,
}

impl<T: Scalar> Tableau<T> {
    fn build(problem: &LpProblem<T>) -> Self {
        let m = problem.rows.len();
        let n = problem.num_vars();
        let mut kinds = vec![ColumnKind::Structural; n];
        let mut row_sign = Vec::with_capacity(m);
        let mut relations = Vec::with_capacity(m);
        for row in &problem.rows {
            let negate = row.rhs.is_negative();
            row_sign.push(!negate);
            relations.push(if negate { row.relation.flipped() } else { row.relation });
        }
        let mut logical_column = vec![None; m];
        for (i, rel) in relations.iter().enumerate() {
            if *rel != Relation::Eq {
                logical_column[i] = Some(kinds.len());
                kinds.push(ColumnKind::Slack);
            }
        }
        let mut initial_column = vec![0; m];
        for (i, rel) in relations.iter().enumerate() {
            match rel {
                Relation::Le => initial_column[i] = logical_column[i].unwrap(),
                Relation::Ge | Relation::Eq => {
                    initial_column[i] = kinds.len();
                    kinds.push(ColumnKind::Artificial);
                }
            }
        }
        let ncols = kinds.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, row) in problem.rows.iter().enumerate() {
            let mut r = vec![T::zero(); ncols];
            for (j, a) in row.coeffs.iter().enumerate() {
                r[j] = if row_sign[i] { a.clone() } else { -a.clone() };
            }
            if let Some(s) = logical_column[i] {
                r[s] = if relations[i] == Relation::Le { T::one() } else { -T::one() };
            }
            r[initial_column[i]] = T::one();
            rows.push(r);
            rhs.push(if row_sign[i] { row.rhs.clone() } else { -row.rhs.clone() });
        }
        Tableau {
            rows,
            rhs,
            kinds,
            basis: initial_column.clone(),
            initial_column,
            logical_column,
            row_sign,
            reduced: vec![T::zero(); ncols],
            objective: T::zero(),
            n_struct: n,
        }
    }

    /// Recomputes reduced costs and objective (`Σ c_B b`) for costs `c`.
    fn price(&mut self, costs: &[T]) {
        self.reduced = costs.to_vec();
        self.objective = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    let mut t = cb.clone();
                    t *= a;
                    *d -= &t;
                }
            }
            let mut t = cb.clone();
            t *= &self.rhs[i];
            self.objective += &t;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        self.rows[r][c] = T::one();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let mut t = f.clone();
                t *= &pivot_row[j];
                row[j] -= &t;
            }
            row[c] = T::zero();
            let mut t = f;
            t *= &pivot_rhs;
            self.rhs[i] -= &t;
            if !T::EXACT && self.rhs[i].is_negative() && self.rhs[i].is_negligible() {
                self.rhs[i] = T::zero();
            }
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &j in &nz {
                let mut t = f.clone();
                t *= &pivot_row[j];
                self.reduced[j] -= &t;
            }
            self.reduced[c] = T::zero();
            let mut t = f;
            t *= &pivot_rhs;
            self.objective += &t;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn entering(&self, rule: PivotRule, allow: &dyn Fn(usize) -> bool) -> Option<usize> {
        let candidates = (0..self.reduced.len()).filter(|&j| allow(j) && self.reduced[j].is_negative_beyond_tol());
        match rule {
            PivotRule::Bland => candidates.into_iter().next(),
            PivotRule::Dantzig => {
                let mut best: Option<usize> = None;
                for j in candidates {
                    if best.is_none_or(|b| self.reduced[j] < self.reduced[b]) {
                        best = Some(j);
                    }
                }
                best
            }
        }
    }

    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, T)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive_beyond_tol() {
                continue;
            }
            let ratio = self.rhs[i].clone() / a;
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    if T::EXACT {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    } else {
                        let tol = T::tolerance() * (T::one() + br.abs());
                        ratio < br.clone() - &tol
                            || ((ratio.clone() - br).abs() <= tol && self.basis[i] < self.basis[*bi])
                    }
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Runs pivots until optimal (`Ok(true)`) or unbounded (`Ok(false)`).
    fn optimize(&mut self, rule: PivotRule, allow: &dyn Fn(usize) -> bool, max_iter: usize) -> Result<bool> {
        let mut degenerate_run = 0usize;
        let switch_after = 4 * (self.rows.len() + self.reduced.len());
        for _ in 0..max_iter {
            // long degenerate stalls fall back to Bland to rule out cycling
            let active = if degenerate_run > switch_after { PivotRule::Bland } else { rule };
            let Some(c) = self.entering(active, allow) else {
                return Ok(true);
            };
            let Some(r) = self.leaving(c) else {
                return Ok(false);
            };
            if self.rhs[r].is_negligible() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, c);
        }
        Err(Error::NumericalBreakdown(format!("simplex exceeded {max_iter} iterations")))
    }

    /// Dual simplex with smallest-index choices; `Ok(false)` means the
    /// primal is infeasible.
    fn dual_optimize(&mut self, allow: &dyn Fn(usize) -> bool, max_iter: usize) -> Result<bool> {
        for _ in 0..max_iter {
            let leaving = (0..self.rows.len())
                .filter(|&i| self.rhs[i].is_negative_beyond_tol())
                .min_by_key(|&i| self.basis[i]);
            let Some(r) = leaving else {
                return Ok(true);
            };
            let mut best: Option<(usize, T)> = None;
            for j in 0..self.reduced.len() {
                let a = &self.rows[r][j];
                if !allow(j) || !a.is_negative_beyond_tol() {
                    continue;
                }
                let ratio = self.reduced[j].clone() / -a.clone();
                let better = match &best {
                    None => true,
                    Some((_, br)) => {
                        if T::EXACT {
                            ratio < *br
                        } else {
                            ratio < br.clone() - T::tolerance() * (T::one() + br.abs())
                        }
                    }
                };
                if better {
                    best = Some((j, ratio));
                }
            }
            let Some((c, _)) = best else {
                return Ok(false);
            };
            self.pivot(r, c);
        }
        Err(Error::NumericalBreakdown(format!("dual simplex exceeded {max_iter} iterations")))
    }
}

/// Solves with the default rule for the scalar type: Bland for exact
/// scalars, Dantzig for floating ones.
pub fn simplex_solve<T: Scalar>(problem: &LpProblem<T>) -> Result<LpSolution<T>> {
    let rule = if T::EXACT { PivotRule::Bland } else { PivotRule::Dantzig };
    simplex_solve_with(problem, rule)
}

pub fn simplex_solve_with<T: Scalar>(problem: &LpProblem<T>, rule: PivotRule) -> Result<LpSolution<T>> {
    problem.validate()?;
    let mut tab = Tableau::build(problem);
    let m = tab.rows.len();
    let ncols = tab.kinds.len();
    let max_iter = if T::EXACT { usize::MAX } else { 200 * (m + ncols) + 1000 };

    // phase 1
    let phase1: Vec<T> =
        tab.kinds.iter().map(|k| if *k == ColumnKind::Artificial { T::one() } else { T::zero() }).collect();
    if phase1.iter().any(|c| !c.is_zero()) {
        tab.price(&phase1);
        let bounded = tab.optimize(rule, &|_| true, max_iter)?;
        debug_assert!(bounded, "phase 1 is bounded below by zero");
        let infeasible = if T::EXACT {
            !tab.objective.is_zero()
        } else {
            let scale = T::one() + tab.rhs.iter().fold(T::zero(), |a, b| if b.abs() > a { b.abs() } else { a });
            tab.objective > T::tolerance() * scale * T::from_u32(1000).unwrap()
        };
        if infeasible {
            return Ok(LpSolution::infeasible());
        }
        // drive zero-level artificials out of the basis where possible
        for r in 0..m {
            if tab.kinds[tab.basis[r]] != ColumnKind::Artificial {
                continue;
            }
            let replacement = (0..ncols)
                .filter(|&j| tab.kinds[j] != ColumnKind::Artificial)
                .find(|&j| !tab.rows[r][j].is_negligible());
            if let Some(j) = replacement {
                tab.pivot(r, j);
            }
        }
    }

    // phase 2 in minimization form
    let sign = |c: &T| if problem.sense == Sense::Maximize { -c.clone() } else { c.clone() };
    let mut costs = vec![T::zero(); ncols];
    for (j, c) in problem.costs.iter().enumerate() {
        costs[j] = sign(c);
    }
    tab.price(&costs);
    let kinds = tab.kinds.clone();
    let bounded = tab.optimize(rule, &|j| kinds[j] != ColumnKind::Artificial, max_iter)?;
    if !bounded {
        return Ok(LpSolution::unbounded());
    }

    Ok(finish(&tab, problem))
}

fn finish<T: Scalar>(tab: &Tableau<T>, problem: &LpProblem<T>) -> LpSolution<T> {
    let m = tab.rows.len();
    let n = tab.n_struct;
    let mut values = vec![T::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rhs[i].clone();
        }
    }
    if !T::EXACT {
        for v in values.iter_mut() {
            if v.is_negative() && v.is_negligible() {
                *v = T::zero();
            }
        }
    }
    let duals: Vec<T> = (0..m)
        .map(|i| {
            let y_min = -tab.reduced[tab.initial_column[i]].clone();
            let y_min = if tab.row_sign[i] { y_min } else { -y_min };
            if problem.sense == Sense::Maximize {
                -y_min
            } else {
                y_min
            }
        })
        .collect();
    let mut structural: Vec<usize> = tab.basis.iter().copied().filter(|&b| b < n).collect();
    structural.sort_unstable();
    let tight_rows: Vec<usize> = (0..m)
        .filter(|&i| match tab.logical_column[i] {
            Some(s) => !tab.basis.contains(&s),
            None => true,
        })
        .collect();
    let objective = problem.objective_at(&values);
    LpSolution {
        status: LpStatus::Optimal,
        values: Some(values),
        objective: Some(objective),
        duals: Some(duals),
        basis: Some(Basis { structural, tight_rows }),
    }
}

/// Exact simplex started from a hinted basis (typically proposed by a
/// floating-point solve). The hint is installed by pivoting; from there the
/// primal simplex runs if the basis is primal feasible, the dual simplex if
/// it is dual feasible. Returns `None` when the hint is unusable.
pub(crate) fn simplex_warm<T: Scalar>(problem: &LpProblem<T>, hint: &Basis) -> Option<LpSolution<T>> {
    problem.validate().ok()?;
    let mut tab = Tableau::build(problem);
    let m = tab.rows.len();
    let ncols = tab.kinds.len();
    let mut wanted: Vec<usize> = hint.structural.clone();
    for i in 0..m {
        if let Some(s) = tab.logical_column[i] {
            if !hint.tight_rows.contains(&i) {
                wanted.push(s);
            }
        }
    }
    wanted.sort_unstable();
    wanted.dedup();
    if wanted.len() != m || wanted.iter().any(|&j| j >= ncols) {
        return None;
    }
    let mut in_wanted = vec![false; ncols];
    for &j in &wanted {
        in_wanted[j] = true;
    }
    for &c in &wanted {
        if tab.basis.contains(&c) {
            continue;
        }
        let r = (0..m).find(|&r| !in_wanted[tab.basis[r]] && !tab.rows[r][c].is_zero())?;
        tab.pivot(r, c);
    }

    let sign = |c: &T| if problem.sense == Sense::Maximize { -c.clone() } else { c.clone() };
    let mut costs = vec![T::zero(); ncols];
    for (j, c) in problem.costs.iter().enumerate() {
        costs[j] = sign(c);
    }
    tab.price(&costs);
    let kinds = tab.kinds.clone();
    let allow = |j: usize| kinds[j] != ColumnKind::Artificial;
    let max_iter = if T::EXACT { usize::MAX } else { 200 * (m + ncols) + 1000 };
    if tab.rhs.iter().all(|b| !b.is_negative_beyond_tol()) {
        if !tab.optimize(PivotRule::Bland, &allow, max_iter).ok()? {
            return Some(LpSolution::unbounded());
        }
    } else if (0..ncols).all(|j| !allow(j) || !tab.reduced[j].is_negative_beyond_tol()) {
        if !tab.dual_optimize(&allow, max_iter).ok()? {
            return Some(LpSolution::infeasible());
        }
        // dual simplex keeps dual feasibility; a final primal pass is a no-op
        // in exact arithmetic and a cleanup in floating point
        if !tab.optimize(PivotRule::Bland, &allow, max_iter).ok()? {
            return Some(LpSolution::unbounded());
        }
    } else {
        return None;
    }
    Some(finish(&tab, problem))
}
