//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves min c·x subject to A·x ≥ b, x ≥ 0 with b ≥ 0. Sizes here are tiny
//! (at most a dozen variables and rows), so a dense tableau with exact
//! arithmetic is the simplest correct choice. The optimal basis also yields
//! the dual vector, which callers verify independently as a certificate.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LpError;

/// min objective·x subject to rows (a, b): a·x ≥ b, and x ≥ 0.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<BigRational>,
    pub rows: Vec<(Vec<BigRational>, BigRational)>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub objective: BigRational,
    pub x: Vec<BigRational>,
    /// Dual multipliers, one per constraint row.
    pub dual: Vec<BigRational>,
}

impl LpSolution {
    /// Full certificate check: primal feasibility, dual feasibility, and
    /// strong duality, all in exact arithmetic.
    pub fn verify(&self, lp: &LinearProgram) -> Result<(), String> {
        let n = lp.objective.len();
        if self.x.len() != n || self.dual.len() != lp.rows.len() {
            return Err("solution dimensions do not match the program".into());
        }
        for (j, v) in self.x.iter().enumerate() {
            if v.is_negative() {
                return Err(format!("x[{j}] negative"));
            }
        }
        for (i, (a, b)) in lp.rows.iter().enumerate() {
            let lhs: BigRational = a.iter().zip(&self.x).map(|(c, v)| c * v).sum();
            if lhs < *b {
                return Err(format!("primal row {i} violated"));
            }
        }
        for (i, y) in self.dual.iter().enumerate() {
            if y.is_negative() {
                return Err(format!("dual[{i}] negative"));
            }
        }
        for j in 0..n {
            let col: BigRational = lp
                .rows
                .iter()
                .zip(&self.dual)
                .map(|((a, _), y)| &a[j] * y)
                .sum();
            if col > lp.objective[j] {
                return Err(format!("dual constraint for x[{j}] violated"));
            }
        }
        let primal: BigRational = lp.objective.iter().zip(&self.x).map(|(c, v)| c * v).sum();
        let dual_val: BigRational = lp.rows.iter().zip(&self.dual).map(|((_, b), y)| b * y).sum();
        if primal != self.objective {
            return Err("stated objective does not match c·x".into());
        }
        if primal != dual_val {
            return Err("strong duality fails".into());
        }
        Ok(())
    }
}

struct Tableau {
    /// Row-reduced [B⁻¹A | B⁻¹b]; columns: n structural, m surplus,
    /// m artificial, then the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn total_cols(&self) -> usize {
        self.n + 2 * self.m
    }

    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.total_cols()]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[row].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.m {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..=self.total_cols() {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs against the given column costs.
    fn reduced_costs(&self, costs: &[BigRational]) -> Vec<BigRational> {
        let total = self.total_cols();
        let mut rc = costs.to_vec();
        for (i, &bi) in self.basis.iter().enumerate() {
            if costs[bi].is_zero() {
                continue;
            }
            for (j, r) in rc.iter_mut().enumerate().take(total) {
                let delta = &costs[bi] * &self.rows[i][j];
                *r -= delta;
            }
        }
        rc
    }

    /// Bland's rule iteration to optimality over the allowed columns.
    fn optimize(
        &mut self,
        costs: &[BigRational],
        allowed: &dyn Fn(usize) -> bool,
    ) -> Result<(), LpError> {
        loop {
            let rc = self.reduced_costs(costs);
            let entering = (0..self.total_cols())
                .find(|&j| allowed(j) && rc[j].is_negative());
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.m {
                if self.rows[i][e].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][e];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, e);
        }
    }
}

/// Solves the program, returning the exact optimum with primal and dual
/// witnesses. `Infeasible` carries the rows that cannot be met.
pub fn solve_min(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    if m == 0 {
        // Nonnegativity alone: optimum at the origin for c ≥ 0; a negative
        // cost makes the program unbounded.
        if lp.objective.iter().any(|c| c.is_negative()) {
            return Err(LpError::Unbounded);
        }
        return Ok(LpSolution {
            objective: BigRational::zero(),
            x: vec![BigRational::zero(); n],
            dual: vec![],
        });
    }
    let total = n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    for (i, (a, b)) in lp.rows.iter().enumerate() {
        assert_eq!(a.len(), n, "row {i} has wrong arity");
        assert!(!b.is_negative(), "rows must have nonnegative right-hand sides");
        let mut row = vec![BigRational::zero(); total + 1];
        row[..n].clone_from_slice(a);
        row[n + i] = -BigRational::one(); // surplus
        row[n + m + i] = BigRational::one(); // artificial
        row[total] = b.clone();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (0..m).map(|i| n + m + i).collect(),
        n,
        m,
    };

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![BigRational::zero(); total];
    for c in phase1.iter_mut().skip(n + m) {
        *c = BigRational::one();
    }
    t.optimize(&phase1, &|_| true)?;
    let infeasibility: BigRational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n + m)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if !infeasibility.is_zero() {
        let bad: Vec<usize> = t
            .basis
            .iter()
            .enumerate()
            .filter(|(i, &b)| b >= n + m && !t.rhs(*i).is_zero())
            .map(|(_, &b)| b - n - m)
            .collect();
        return Err(LpError::Infeasible(bad));
    }
    // Pivot any zero-valued artificial out of the basis when possible.
    for i in 0..m {
        if t.basis[i] >= n + m {
            if let Some(col) = (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            }
        }
    }

    // Phase 2 over the original costs, artificials barred from entering.
    let mut phase2 = vec![BigRational::zero(); total];
    phase2[..n].clone_from_slice(&lp.objective);
    let nm = n + m;
    t.optimize(&phase2, &move |j| j < nm)?;

    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(i).clone();
        }
    }
    // The reduced cost of surplus column i equals the dual multiplier y_i.
    let rc = t.reduced_costs(&phase2);
    let dual: Vec<BigRational> = (0..m).map(|i| rc[n + i].clone()).collect();
    let objective: BigRational = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let solution = LpSolution { objective, x, dual };
    debug_assert!(solution.verify(lp).is_ok(), "optimal basis must certify");
    Ok(solution)
}
