//! Fraction-free linear solving over an exact coefficient field.
//!
//! Forward elimination is Bareiss-style: every updated entry is a minor of
//! the original matrix, so the division by the previous pivot is exact in the
//! underlying domain and — for rational-function entries with polynomial
//! inputs — the intermediate values stay polynomial instead of growing gcd
//! work. Pivots are chosen by lowest entry complexity (fewest terms), with
//! column and row index as deterministic tie-breakers. Designated columns can
//! be deferred so they are only pivoted once nothing else remains.
//!
//! Back-substitution tracks every unknown as an affine form over the free
//! columns, which makes "is this coordinate the same in every solution?" an
//! exact syntactic check.

use std::collections::BTreeMap;


use crate::coeff::Coeff;

/// An unknown expressed as `cst + Σ lin[j] * x_j` over the free columns `j`.
#[derive(Debug, Clone)]
pub struct AffineForm<C: Coeff> {
    pub cst: C,
    pub lin: BTreeMap<usize, C>,
}

impl<C: Coeff> AffineForm<C> {
    fn constant(c: C) -> Self {
        AffineForm { cst: c, lin: BTreeMap::new() }
    }

    fn free(j: usize) -> Self {
        let mut lin = BTreeMap::new();
        lin.insert(j, C::one());
        AffineForm { cst: C::zero(), lin }
    }

    fn sub_scaled(&mut self, coeff: &C, other: &AffineForm<C>) {
        if coeff.is_zero() {
            return;
        }
        self.cst = self.cst.clone() - coeff.clone() * other.cst.clone();
        for (j, c) in &other.lin {
            let delta = coeff.clone() * c.clone();
            let entry = self.lin.remove(j).unwrap_or_else(C::zero) - delta;
            if !entry.is_zero() {
                self.lin.insert(*j, entry);
            }
        }
    }

    fn div(&mut self, d: &C) {
        self.cst = self.cst.clone() / d.clone();
        for c in self.lin.values_mut() {
            *c = c.clone() / d.clone();
        }
    }

    /// True when the unknown takes this value in every solution.
    pub fn is_unique(&self) -> bool {
        self.lin.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Inconsistent,
}

#[derive(Debug)]
pub struct AffineSolution<C: Coeff> {
    /// One form per column of the system.
    pub forms: Vec<AffineForm<C>>,
    pub free_cols: Vec<usize>,
    pub rank: usize,
}

impl<C: Coeff> AffineSolution<C> {
    /// The particular solution with all free unknowns set to zero.
    pub fn particular(&self) -> Vec<C> {
        self.forms.iter().map(|f| f.cst.clone()).collect()
    }
}

/// Solves `A x = b` exactly. `defer_cols[j]` marks columns that are pivoted
/// only when no other column has a nonzero candidate left.
pub fn solve_affine<C: Coeff>(
    mut mat: Vec<Vec<C>>,
    mut rhs: Vec<C>,
    defer_cols: &[bool],
) -> Result<AffineSolution<C>, SolveOutcome> {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    debug_assert!(defer_cols.len() == ncols);

    let mut row_used = vec![false; nrows];
    let mut col_pivoted = vec![false; ncols];
    // (row, col) in elimination order.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = C::one();

    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (complexity, col, row)
        let mut best_deferred: Option<(usize, usize, usize)> = None;
        for (i, row) in mat.iter().enumerate() {
            if row_used[i] {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if col_pivoted[j] || entry.is_zero() {
                    continue;
                }
                let key = (entry.complexity(), j, i);
                let slot = if defer_cols[j] { &mut best_deferred } else { &mut best };
                if slot.map_or(true, |s| key < s) {
                    *slot = Some(key);
                }
            }
        }
        let Some((_, pc, pr)) = best.or(best_deferred) else {
            break;
        };
        row_used[pr] = true;
        col_pivoted[pc] = true;
        pivots.push((pr, pc));

        let pivot = mat[pr][pc].clone();
        let pivot_row = mat[pr].clone();
        let pivot_rhs = rhs[pr].clone();
        for i in 0..nrows {
            if row_used[i] {
                continue;
            }
            let factor = mat[i][pc].clone();
            for j in 0..ncols {
                if col_pivoted[j] && j != pc {
                    // Already exactly zero in every unused row.
                    continue;
                }
                let updated =
                    pivot.clone() * mat[i][j].clone() - factor.clone() * pivot_row[j].clone();
                mat[i][j] = updated.div_exact(&prev);
            }
            let updated = pivot.clone() * rhs[i].clone() - factor.clone() * pivot_rhs.clone();
            rhs[i] = updated.div_exact(&prev);
        }
        prev = pivot;
    }

    // Rows that eliminated to zero must have zero right-hand side.
    for i in 0..nrows {
        if !row_used[i] && !rhs[i].is_zero() {
            return Err(SolveOutcome::Inconsistent);
        }
    }

    let free_cols: Vec<usize> = (0..ncols).filter(|&j| !col_pivoted[j]).collect();
    let mut forms: Vec<AffineForm<C>> = (0..ncols)
        .map(|j| {
            if col_pivoted[j] {
                AffineForm::constant(C::zero()) // placeholder until back-substitution
            } else {
                AffineForm::free(j)
            }
        })
        .collect();

    for &(pr, pc) in pivots.iter().rev() {
        let mut form = AffineForm::constant(rhs[pr].clone());
        for j in 0..ncols {
            if j == pc || mat[pr][j].is_zero() {
                continue;
            }
            let coeff = mat[pr][j].clone();
            let other = forms[j].clone();
            form.sub_scaled(&coeff, &other);
        }
        form.div(&mat[pr][pc]);
        forms[pc] = form;
    }

    Ok(AffineSolution { forms, free_cols, rank: pivots.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    fn v(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, -1]]);
        let b = v(&[5, 1]);
        let sol = solve_affine(a, b, &[false, false]).unwrap();
        assert!(sol.forms.iter().all(AffineForm::is_unique));
        assert_eq!(sol.particular(), vec![rat_int(2), rat_int(1)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = v(&[1, 3]);
        assert!(matches!(
            solve_affine(a, b, &[false, false]),
            Err(SolveOutcome::Inconsistent)
        ));
    }

    #[test]
    fn underdetermined_tracks_free_columns() {
        let a = m(&[&[1, 1, 1], &[1, -1, 0]]);
        let b = v(&[3, 1]);
        let sol = solve_affine(a.clone(), b.clone(), &[false, false, false]).unwrap();
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.free_cols.len(), 1);
        let free = sol.free_cols[0];
        let x = sol.particular();
        for (row, want) in a.iter().zip(&b) {
            let got: Rational = row
                .iter()
                .zip(&x)
                .map(|(c, xi)| c * xi)
                .fold(rat_int(0), |acc, t| acc + t);
            assert_eq!(&got, want);
        }
        // The other coordinates vary with the free one.
        for (j, f) in sol.forms.iter().enumerate() {
            if j != free {
                assert!(f.lin.contains_key(&free));
            }
        }
    }

    #[test]
    fn deferred_column_still_solves() {
        let a = m(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]]);
        let b = v(&[4, 3, 1]);
        let defer = [false, false, true];
        let sol = solve_affine(a.clone(), b.clone(), &defer).unwrap();
        assert!(sol.forms.iter().all(AffineForm::is_unique));
        let x = sol.particular();
        for (row, want) in a.iter().zip(&b) {
            let got: Rational = row
                .iter()
                .zip(&x)
                .map(|(c, xi)| c * xi)
                .fold(rat_int(0), |acc, t| acc + t);
            assert_eq!(&got, want);
        }
        assert_eq!(x[2], rat(3, 2));
    }

    #[test]
    fn zero_rhs_gives_zero_particular() {
        let a = m(&[&[3, 1], &[1, 2]]);
        let b = v(&[0, 0]);
        let sol = solve_affine(a, b, &[false, false]).unwrap();
        assert_eq!(sol.particular(), vec![rat_int(0), rat_int(0)]);
    }
}
