use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds<T: Scalar>(&self, lhs: &T, rhs: &T) -> bool {
        let tol = T::tolerance() * (T::one() + rhs.abs());
        match self {
            Relation::Le => *lhs <= rhs.clone() + &tol,
            Relation::Ge => lhs.clone() + &tol >= *rhs,
            Relation::Eq => (lhs.clone() - rhs).abs() <= tol,
        }
    }

    pub fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

/// `sense  offset + costs·x  s.t.  rows,  x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    pub sense: Sense,
    pub costs: Vec<T>,
    pub offset: T,
    pub rows: Vec<Constraint<T>>,
}

impl<T: Scalar> LpProblem<T> {
    pub fn new(sense: Sense, costs: Vec<T>) -> Self {
        LpProblem { sense, costs, offset: T::zero(), rows: Vec::new() }
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.offset = offset;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.costs.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        self.rows.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.costs.is_empty() {
            return Err(Error::ShapeMismatch("linear program needs at least one variable".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != self.costs.len() {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} coefficients, expected {}",
                    row.coeffs.len(),
                    self.costs.len()
                )));
            }
        }
        Ok(())
    }

    /// `offset + costs·x`.
    pub fn objective_at(&self, x: &[T]) -> T {
        let mut acc = self.offset.clone();
        for (c, v) in self.costs.iter().zip(x) {
            acc += c.clone() * v;
        }
        acc
    }

    pub fn row_value(&self, row: usize, x: &[T]) -> T {
        let mut acc = T::zero();
        for (a, v) in self.rows[row].coeffs.iter().zip(x) {
            acc += a.clone() * v;
        }
        acc
    }

    /// Primal feasibility (exact for exact scalars).
    pub fn is_feasible(&self, x: &[T]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative_beyond_tol())
            && (0..self.rows.len()).all(|i| {
                let row = &self.rows[i];
                row.relation.holds(&self.row_value(i, x), &row.rhs)
            })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LpProblem<U> {
        LpProblem {
            sense: self.sense,
            costs: self.costs.iter().map(&f).collect(),
            offset: f(&self.offset),
            rows: self
                .rows
                .iter()
                .map(|r| Constraint { coeffs: r.coeffs.iter().map(&f).collect(), relation: r.relation, rhs: f(&r.rhs) })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Final basis in natural-form terms: the basic structural variables and the
/// rows held at equality (whose slack is nonbasic). Both lists have the same
/// length for a nondegenerate description.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Basis {
    pub structural: Vec<usize>,
    pub tight_rows: Vec<usize>,
}

/// Result of a solve.
///
/// `duals[i]` is the sensitivity of the optimum to `rows[i].rhs`; together
/// with `values` it certifies optimality through [`check_optimality`](super::check_optimality).
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub values: Option<Vec<T>>,
    pub objective: Option<T>,
    pub duals: Option<Vec<T>>,
    pub basis: Option<Basis>,
}

impl<T> LpSolution<T> {
    pub fn infeasible() -> Self {
        LpSolution { status: LpStatus::Infeasible, values: None, objective: None, duals: None, basis: None }
    }

    pub fn unbounded() -> Self {
        LpSolution { status: LpStatus::Unbounded, values: None, objective: None, duals: None, basis: None }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}
