//! Small dense two-phase simplex solver with Bland's anti-cycling rule.
//!
//! Sized for dispatch problems (a few hundred rows/columns); correctness is
//! pinned by brute-force oracles in the dispatch tests rather than by the
//! choice of pivoting strategy.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const REDUCED_COST_TOL: f64 = 1e-9;
const FEASIBILITY_TOL: f64 = 1e-7;

/// Constraint relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// One linear constraint over the structural variables.
#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Minimize `objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<LpConstraint>,
}

/// Primal solution of an LP.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    /// `rows × (cols + 1)`; the last entry of each row is the rhs.
    rows: Vec<Vec<f64>>,
    /// Basic variable (column index) of each row.
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> f64 {
        self.rows[row][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let scale = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= scale;
        }
        let pivot_row = self.rows[row].clone();
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = other[col];
            if factor != 0.0 {
                for (v, p) in other.iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations for a minimization with reduced costs derived
    /// from `cost` (length == cols), entering by Bland's smallest-index rule
    /// over `allowed` columns. Returns Err on unboundedness.
    fn minimize(&mut self, cost: &[f64], allowed: usize) -> Result<()> {
        // Generous cap: Bland's rule terminates, but guard against float
        // pathologies anyway.
        let max_iters = 50_000 + 200 * (self.rows.len() + self.cols);
        for _ in 0..max_iters {
            let reduced = self.reduced_costs(cost);
            let entering = (0..allowed).find(|&j| reduced[j] < -REDUCED_COST_TOL);
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.rows.len() {
                let a = self.rows[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    let replace = match leaving {
                        None => true,
                        // Bland's leaving rule: on ratio ties keep the row
                        // whose basic variable has the smaller index.
                        Some(r) => {
                            ratio < best_ratio - PIVOT_TOL
                                || (ratio < best_ratio + PIVOT_TOL && self.basis[i] < self.basis[r])
                        }
                    };
                    if replace {
                        leaving = Some(i);
                        best_ratio = ratio.min(best_ratio);
                    }
                }
            }
            let Some(row) = leaving else {
                return Err(Error::Model("linear program is unbounded below".into()));
            };
            self.pivot(row, col);
        }
        Err(Error::Model("simplex iteration limit exceeded".into()))
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut reduced = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (r, &a) in reduced.iter_mut().zip(&self.rows[i]) {
                    *r -= cb * a;
                }
            }
        }
        reduced
    }

    fn primal(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i);
            }
        }
        x
    }
}

/// Solves the LP exactly (up to float tolerance). Errors: infeasible or
/// unbounded problems, inconsistent constraint widths.
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution> {
    let n = problem.objective.len();
    for (i, c) in problem.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::Argument(format!(
                "constraint {i} has {} coefficients, expected {n}",
                c.coeffs.len()
            )));
        }
        if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument(format!(
                "constraint {i} contains non-finite values"
            )));
        }
    }

    // Normalize to nonnegative rhs and count auxiliary columns.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = problem
        .constraints
        .iter()
        .map(|c| {
            if c.rhs < 0.0 {
                let coeffs = c.coeffs.iter().map(|v| -v).collect();
                let relation = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs, relation, -c.rhs)
            } else {
                (c.coeffs.clone(), c.relation, c.rhs)
            }
        })
        .collect();

    let m = rows.len();
    let n_slack = rows
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let n_artificial = rows
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Le)
        .count();
    let cols = n + n_slack + n_artificial;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        basis: vec![0; m],
        cols,
    };
    let mut next_slack = n;
    let mut next_artificial = n + n_slack;
    for (i, (coeffs, relation, rhs)) in rows.drain(..).enumerate() {
        let mut row = vec![0.0; cols + 1];
        row[..n].copy_from_slice(&coeffs);
        row[cols] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = 1.0;
                tableau.basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_artificial] = 1.0;
                tableau.basis[i] = next_artificial;
                next_artificial += 1;
            }
            Relation::Eq => {
                row[next_artificial] = 1.0;
                tableau.basis[i] = next_artificial;
                next_artificial += 1;
            }
        }
        tableau.rows.push(row);
    }

    // Phase 1: drive the artificial variables to zero.
    if n_artificial > 0 {
        let mut phase1_cost = vec![0.0; cols];
        for c in phase1_cost.iter_mut().skip(n + n_slack) {
            *c = 1.0;
        }
        tableau.minimize(&phase1_cost, cols)?;
        let infeasibility: f64 = tableau
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= n + n_slack)
            .map(|(i, _)| tableau.rhs(i))
            .sum();
        if infeasibility > FEASIBILITY_TOL {
            return Err(Error::Model(format!(
                "linear program is infeasible (phase-1 residual {infeasibility:.3e})"
            )));
        }
        // Pivot any degenerate artificial out of the basis where possible.
        for i in 0..m {
            if tableau.basis[i] >= n + n_slack {
                if let Some(col) = (0..n + n_slack).find(|&j| tableau.rows[i][j].abs() > PIVOT_TOL)
                {
                    tableau.pivot(i, col);
                }
            }
        }
    }

    // Phase 2 over the structural + slack columns only.
    let mut phase2_cost = vec![0.0; cols];
    phase2_cost[..n].copy_from_slice(&problem.objective);
    tableau.minimize(&phase2_cost, n + n_slack)?;

    let x = tableau.primal(n);
    let objective = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { x, objective })
}
