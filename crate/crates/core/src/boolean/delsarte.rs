use crate::error::{domain, Error, Result};
use crate::exact::rational::{from_bigint, int};
use crate::lp::{LpProblem, LpStatus, Relation, RowGenerationLp, Sense};
use crate::orthopoly::krawtchouk_table;
use crate::{ExactLp, Rational};

const MAX_N: usize = 4096;

fn check(n: usize, d: usize) -> Result<()> {
    if n == 0 || n > MAX_N || d == 0 || d > n + 1 {
        return Err(domain(format!("delsarte bound needs 1 <= d <= n + 1, n >= 1; got n = {n}, d = {d}")));
    }
    Ok(())
}

/// The LP `min 1 + Σ_k f_k K_k(0)` over `f >= 0` with
/// `Σ_k f_k K_k(t) <= -1` for `d <= t <= n`.
pub fn delsarte_lp_problem(n: usize, d: usize) -> Result<ExactLp> {
    check(n, d)?;
    let table = krawtchouk_table(n);
    let value = |k: usize, t: usize| from_bigint(table[k][t].clone());
    let costs = (0..=n).map(|k| value(k, 0)).collect();
    let mut lp = LpProblem::new(Sense::Minimize, costs).with_offset(int(1));
    for t in d..=n {
        lp.add_row((0..=n).map(|k| value(k, t)).collect(), Relation::Le, int(-1));
    }
    Ok(lp)
}

#[derive(Clone, Debug)]
pub struct DelsarteSolution {
    pub n: usize,
    pub d: usize,
    pub bound: Rational,
    /// Optimal `f_0, ..., f_n`.
    pub coeffs: Vec<Rational>,
    /// Optimal multipliers of the rows `t = d, ..., n` (nonpositive).
    pub duals: Vec<Rational>,
}

/// Solves the LPs for `d = n + 1, n, ..., d_min` in one pass, adding the row
/// for `t = d` at each step. Entries come back in increasing `d`.
pub fn delsarte_lp_solve_range(n: usize, d_min: usize) -> Result<Vec<DelsarteSolution>> {
    check(n, d_min)?;
    let table = krawtchouk_table(n);
    let value = |k: usize, t: usize| from_bigint(table[k][t].clone());
    let costs = (0..=n).map(|k| value(k, 0)).collect();
    let mut lp = RowGenerationLp::new(costs, int(1))?;
    let mut out = Vec::with_capacity(n + 2 - d_min);
    for d in (d_min..=n + 1).rev() {
        if d <= n {
            lp.add_row((0..=n).map(|k| value(k, d)).collect(), int(-1))?;
        }
        let sol = lp.solution();
        let (LpStatus::Optimal, Some(bound), Some(coeffs), Some(mut duals)) =
            (sol.status, sol.objective, sol.values, sol.duals)
        else {
            // f = (0, 1, ..., 1) is always feasible
            return Err(Error::NumericalBreakdown(format!("delsarte LP ({n}, {d}) reported infeasible")));
        };
        // rows were added for t = n down to d
        duals.reverse();
        out.push(DelsarteSolution { n, d, bound, coeffs, duals });
    }
    out.reverse();
    Ok(out)
}

pub fn delsarte_lp_solve(n: usize, d: usize) -> Result<DelsarteSolution> {
    Ok(delsarte_lp_solve_range(n, d)?.remove(0))
}

/// Exact optimum of the Delsarte LP for `A(n, d)`.
pub fn delsarte_lp_bound(n: usize, d: usize) -> Result<Rational> {
    Ok(delsarte_lp_solve(n, d)?.bound)
}
