//! Phase-1 simplex over exact rationals.
//!
//! Decides feasibility of `A x = b, x >= 0` and returns a witness. Bland's
//! smallest-index rule for both the entering column and ratio-test ties, so
//! the method terminates without any cycling guard.

use num_traits::{Signed, Zero};

use super::rational::Rational;

pub struct Phase1 {
    tableau: Vec<Vec<Rational>>,
    objective: Vec<Rational>,
    basis: Vec<usize>,
    nvars: usize,
}

impl Phase1 {
    /// `rows[i]` has `nvars` coefficients; `rhs[i]` is the right-hand side.
    pub fn new(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> Self {
        let m = rows.len();
        let width = nvars + m + 1;
        let mut tableau = Vec::with_capacity(m);
        for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
            debug_assert_eq!(row.len(), nvars);
            let flip = b.is_negative();
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().map(|c| if flip { -c } else { c.clone() }));
            t.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            t.push(if flip { -b } else { b.clone() });
            tableau.push(t);
        }
        let mut objective = vec![Rational::zero(); width];
        for t in &tableau {
            for j in 0..nvars {
                objective[j] -= &t[j];
            }
            objective[width - 1] -= &t[width - 1];
        }
        Phase1 {
            tableau,
            objective,
            basis: (nvars..nvars + m).collect(),
            nvars,
        }
    }

    fn width(&self) -> usize {
        self.objective.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width();
        let p = self.tableau[row][col].clone();
        for c in 0..w {
            self.tableau[row][c] /= &p;
        }
        let pivot_row = self.tableau[row].clone();
        for (r, t) in self.tableau.iter_mut().enumerate() {
            if r == row || t[col].is_zero() {
                continue;
            }
            let f = t[col].clone();
            for c in 0..w {
                if !pivot_row[c].is_zero() {
                    t[c] -= &f * &pivot_row[c];
                }
            }
        }
        if !self.objective[col].is_zero() {
            let f = self.objective[col].clone();
            for c in 0..w {
                if !pivot_row[c].is_zero() {
                    self.objective[c] -= &f * &pivot_row[c];
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs to optimality and returns a feasible `x` if the phase-1 optimum is zero.
    pub fn solve(mut self) -> Option<Vec<Rational>> {
        let rhs = self.width() - 1;
        loop {
            let Some(enter) = (0..rhs).find(|&j| self.objective[j].is_negative()) else {
                break;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, t) in self.tableau.iter().enumerate() {
                if !t[enter].is_positive() {
                    continue;
                }
                let ratio = &t[rhs] / &t[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Phase-1 objective is bounded below by zero, so a leaving row always exists.
            let (row, _) = leave.expect("phase-1 objective is bounded");
            self.pivot(row, enter);
        }
        if !self.objective[rhs].is_zero() {
            return None;
        }
        let mut x = vec![Rational::zero(); self.nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nvars {
                x[b] = self.tableau[i][rhs].clone();
            }
        }
        Some(x)
    }
}

/// Feasibility of `rows * x = rhs, x >= 0`.
pub fn find_nonnegative_solution(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    nvars: usize,
) -> Option<Vec<Rational>> {
    Phase1::new(rows, rhs, nvars).solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::int;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn feasible_system_returns_witness() {
        let rows = vec![r(&[1, 1, 0]), r(&[0, 1, 1])];
        let rhs = r(&[2, 3]);
        let x = find_nonnegative_solution(&rows, &rhs, 3).unwrap();
        for (row, b) in rows.iter().zip(&rhs) {
            let lhs: Rational = row.iter().zip(&x).map(|(a, xi)| a * xi).sum();
            assert_eq!(&lhs, b);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn infeasible_system_detected() {
        // x1 - x2 = -1 and x1 + x2 = -1 has no nonnegative solution
        let rows = vec![r(&[1, -1]), r(&[1, 1])];
        assert!(find_nonnegative_solution(&rows, &r(&[-1, -1]), 2).is_none());
    }

    #[test]
    fn degenerate_rows_terminate() {
        // redundant and zero rows exercise degenerate pivots
        let rows = vec![r(&[1, 1, 1]), r(&[2, 2, 2]), r(&[0, 0, 0]), r(&[1, 0, -1])];
        let x = find_nonnegative_solution(&rows, &r(&[3, 6, 0, 0]), 3).unwrap();
        assert_eq!(&x[0] + &x[1] + &x[2], int(3));
        assert_eq!(&x[0] - &x[2], int(0));
    }
}
