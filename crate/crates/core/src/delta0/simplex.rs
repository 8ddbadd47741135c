//! Dense two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Problems here are tiny (tens of rows), so the tableau is dense, reduced
//! costs are recomputed each iteration, and Bland's anti-cycling rule is used
//! unconditionally. Everything is exact; there are no tolerances.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `min c·x` subject to `A x = b`, `x >= 0`.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

struct Tableau {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].clone().recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.cols {
                let delta = &self.rows[r][j] * &f;
                self.rows[i][j] -= delta;
            }
            let delta = &self.rhs[r] * &f;
            self.rhs[i] -= delta;
        }
        self.basis[r] = c;
    }

    /// Runs Bland-rule simplex to optimality on the given objective,
    /// considering only columns `< active_cols`.
    fn optimize(&mut self, objective: &[Rational], active_cols: usize) -> Result<(), LpError> {
        loop {
            // Reduced costs: c - c_B * T.
            let mut reduced: Vec<Rational> = objective[..active_cols].to_vec();
            for (i, &b) in self.basis.iter().enumerate() {
                let cb = &objective[b];
                if cb.is_zero() {
                    continue;
                }
                for j in 0..active_cols {
                    let delta = &self.rows[i][j] * cb;
                    reduced[j] -= delta;
                }
            }
            let Some(enter) = (0..active_cols).find(|&j| reduced[j].is_negative()) else {
                return Ok(());
            };
            // Ratio test; ties broken by smallest basis variable (Bland).
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][enter];
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
            let Some((leave, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(leave, enter);
        }
    }
}

/// Solves the standard-form LP; returns the optimal value and an optimal
/// vertex.
pub fn solve_standard(lp: &StandardLp) -> Result<(Rational, Vec<Rational>), LpError> {
    let m = lp.rows.len();
    let n = lp.objective.len();
    debug_assert!(lp.rows.iter().all(|r| r.len() == n));

    // Phase 1: artificial variables n..n+m with nonnegative rhs.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = lp.rhs[i].is_negative();
        let mut row: Vec<Rational> = lp.rows[i]
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        rows.push(row);
        rhs.push(if flip { -lp.rhs[i].clone() } else { lp.rhs[i].clone() });
    }
    let mut t = Tableau { cols: n + m, rows, rhs, basis: (n..n + m).collect() };

    let mut phase1_obj = vec![Rational::zero(); n + m];
    for c in phase1_obj.iter_mut().skip(n) {
        *c = Rational::one();
    }
    t.optimize(&phase1_obj, n + m)?;
    let infeas: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n)
        .map(|(i, _)| t.rhs[i].clone())
        .fold(Rational::zero(), |acc, v| acc + v);
    if !infeas.is_zero() {
        return Err(LpError::Infeasible);
    }

    // Drive remaining zero-level artificials out of the basis.
    for i in 0..m {
        if t.basis[i] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            t.pivot(i, c);
        }
        // A fully zero row is redundant; leaving the artificial basic at
        // level zero is harmless for phase 2.
    }

    let mut phase2_obj = lp.objective.clone();
    phase2_obj.resize(n + m, Rational::zero());
    t.optimize(&phase2_obj, n)?;

    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let value = lp
        .objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .fold(Rational::zero(), |acc, v| acc + v);
    Ok((value, x))
}
