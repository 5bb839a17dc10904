use num_traits::{Signed, Zero};

use super::problem::{Basis, LpProblem, LpSolution, LpStatus, Relation, Sense};
use super::tableau::{simplex_solve, simplex_warm};
use crate::error::Result;
use crate::exact::linalg::solve_linear;
use crate::exact::rational::to_f64;
use crate::{Rational, Scalar};

fn min_form<T: Scalar>(sense: Sense, v: &T) -> T {
    match sense {
        Sense::Minimize => v.clone(),
        Sense::Maximize => -v.clone(),
    }
}

/// Dual feasibility plus zero duality gap for `y` (in the problem's own sense).
fn dual_certifies<T: Scalar>(problem: &LpProblem<T>, x: &[T], y: &[T]) -> bool {
    if y.len() != problem.rows.len() {
        return false;
    }
    let tol = T::tolerance();
    let y_min: Vec<T> = y.iter().map(|v| min_form(problem.sense, v)).collect();
    for (row, yi) in problem.rows.iter().zip(&y_min) {
        let ok = match row.relation {
            Relation::Le => *yi <= tol,
            Relation::Ge => *yi >= -tol.clone(),
            Relation::Eq => true,
        };
        if !ok {
            return false;
        }
    }
    let mut scale = T::one();
    for j in 0..problem.num_vars() {
        let mut reduced = min_form(problem.sense, &problem.costs[j]);
        for (row, yi) in problem.rows.iter().zip(&y_min) {
            reduced -= row.coeffs[j].clone() * yi;
        }
        if reduced < -tol.clone() * (T::one() + problem.costs[j].abs()) {
            return false;
        }
    }
    let mut primal = T::zero();
    for (c, v) in problem.costs.iter().zip(x) {
        primal += min_form(problem.sense, c) * v;
    }
    let mut dual = T::zero();
    for (row, yi) in problem.rows.iter().zip(&y_min) {
        dual += row.rhs.clone() * yi;
    }
    if primal.abs() > scale {
        scale = primal.abs();
    }
    (primal - dual).abs() <= tol * scale
}

/// `true` iff `solution` is primal feasible and its dual vector certifies
/// optimality (dual feasibility and equal objectives). Exact for exact
/// scalars, within the scalar tolerance otherwise.
pub fn check_optimality<T: Scalar>(problem: &LpProblem<T>, solution: &LpSolution<T>) -> bool {
    if solution.status != LpStatus::Optimal || problem.validate().is_err() {
        return false;
    }
    let (Some(x), Some(y)) = (&solution.values, &solution.duals) else {
        return false;
    };
    if !problem.is_feasible(x) {
        return false;
    }
    if let Some(obj) = &solution.objective {
        let at = problem.objective_at(x);
        if (at.clone() - obj).abs() > T::tolerance() * (T::one() + at.abs()) {
            return false;
        }
    }
    dual_certifies(problem, x, y)
}

/// Exact solve that first asks an `f64` simplex for the optimal basis and
/// certifies it in exact arithmetic; if the proposed basis fails exact
/// certification the exact Bland simplex runs from scratch.
pub fn solve_exact(problem: &LpProblem<Rational>) -> Result<LpSolution<Rational>> {
    problem.validate()?;
    if let Some(sol) = float_guided(problem) {
        return Ok(sol);
    }
    simplex_solve(problem)
}

fn float_guided(problem: &LpProblem<Rational>) -> Option<LpSolution<Rational>> {
    let scaled = equilibrated_f64(problem);
    let fsol = simplex_solve(&scaled).ok()?;
    if fsol.status != LpStatus::Optimal {
        return None;
    }
    let basis = fsol.basis.as_ref()?;
    if let Some(sol) = certify_basis(problem, basis) {
        return Some(sol);
    }
    simplex_warm(problem, basis).filter(|s| s.status != LpStatus::Optimal || check_optimality(problem, s))
}

/// Column then row max-norm scaling; the optimal basis is invariant under it.
fn equilibrated_f64(problem: &LpProblem<Rational>) -> LpProblem<f64> {
    let raw = problem.map(to_f64);
    let n = raw.num_vars();
    let mut col_scale = vec![1.0f64; n];
    for (j, s) in col_scale.iter_mut().enumerate() {
        let mut mx = raw.costs[j].abs();
        for row in &raw.rows {
            mx = mx.max(row.coeffs[j].abs());
        }
        if mx > 0.0 && mx.is_finite() {
            *s = 1.0 / mx;
        }
    }
    let mut out = raw.clone();
    for (c, s) in out.costs.iter_mut().zip(&col_scale) {
        *c *= s;
    }
    for row in out.rows.iter_mut() {
        for (a, s) in row.coeffs.iter_mut().zip(&col_scale) {
            *a *= s;
        }
        let mx = row.coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        if mx > 0.0 && mx.is_finite() {
            for a in row.coeffs.iter_mut() {
                *a /= mx;
            }
            row.rhs /= mx;
        }
    }
    out
}

/// Exact primal and dual solutions for a candidate basis, if it is optimal.
pub(crate) fn certify_basis(problem: &LpProblem<Rational>, basis: &Basis) -> Option<LpSolution<Rational>> {
    let (cols, rows) = (&basis.structural, &basis.tight_rows);
    if cols.len() != rows.len() {
        return None;
    }
    let n = problem.num_vars();
    let k = cols.len();
    let square: Vec<Vec<Rational>> =
        rows.iter().map(|&i| cols.iter().map(|&j| problem.rows[i].coeffs[j].clone()).collect()).collect();
    let rhs: Vec<Rational> = rows.iter().map(|&i| problem.rows[i].rhs.clone()).collect();
    let x_basic = solve_linear(&square, &rhs).ok()?;
    let mut x = vec![Rational::zero(); n];
    for (&j, v) in cols.iter().zip(x_basic) {
        if v.is_negative() {
            return None;
        }
        x[j] = v;
    }
    if !problem.is_feasible(&x) {
        return None;
    }
    let transposed: Vec<Vec<Rational>> = (0..k).map(|a| (0..k).map(|b| square[b][a].clone()).collect()).collect();
    let c_basic: Vec<Rational> = cols.iter().map(|&j| min_form(problem.sense, &problem.costs[j])).collect();
    let y_tight = solve_linear(&transposed, &c_basic).ok()?;
    let mut y = vec![Rational::zero(); problem.rows.len()];
    for (&i, v) in rows.iter().zip(y_tight) {
        y[i] = min_form(problem.sense, &v);
    }
    if !dual_certifies(problem, &x, &y) {
        return None;
    }
    let objective = problem.objective_at(&x);
    Some(LpSolution {
        status: LpStatus::Optimal,
        values: Some(x),
        objective: Some(objective),
        duals: Some(y),
        basis: Some(basis.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn guided_matches_bland() {
        // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6, x <= 3
        let mut p = LpProblem::new(Sense::Maximize, vec![int(3), int(2)]);
        p.add_row(vec![int(1), int(1)], Relation::Le, int(4));
        p.add_row(vec![int(1), int(3)], Relation::Le, int(6));
        p.add_row(vec![int(1), int(0)], Relation::Le, int(3));
        let a = solve_exact(&p).unwrap();
        let b = simplex_solve(&p).unwrap();
        assert_eq!(a.objective, Some(int(11)));
        assert_eq!(a.objective, b.objective);
        assert!(check_optimality(&p, &a));
        assert!(check_optimality(&p, &b));
    }

    #[test]
    fn wrong_duals_are_rejected() {
        let mut p = LpProblem::new(Sense::Minimize, vec![int(1), int(1)]);
        p.add_row(vec![int(1), int(2)], Relation::Ge, int(2));
        let mut s = solve_exact(&p).unwrap();
        assert_eq!(s.objective, Some(int(1)));
        assert!(check_optimality(&p, &s));
        s.duals = Some(vec![rat(1, 3)]);
        assert!(!check_optimality(&p, &s));
    }

    #[test]
    fn float_optimality_within_tolerance() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0, 1.0]);
        p.add_row(vec![1.0, 2.0], Relation::Le, 4.0);
        p.add_row(vec![3.0, 1.0], Relation::Le, 6.0);
        let s = simplex_solve(&p).unwrap();
        assert!((s.objective.unwrap() - 2.8).abs() < 1e-12);
        assert!(check_optimality(&p, &s));
    }
}
