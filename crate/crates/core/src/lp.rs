//! Dense two-phase simplex, phase 1 only: feasibility of `A y = b, y >= 0`.
//!
//! Sized for the face oracle, where the systems have a handful of rows and a
//! few hundred to a few thousand columns.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;

/// Minimum of `Σ |A y - b|` over `y >= 0`, as reached by phase 1 of the
/// simplex method. Zero (up to rounding) iff the system is feasible.
pub fn phase_one_infeasibility(a: &[Vec<f64>], b: &[f64]) -> Result<f64> {
    phase_one(a, b).map(|(v, _)| v)
}

/// [`phase_one_infeasibility`] together with the final `y`.
pub fn phase_one(a: &[Vec<f64>], b: &[f64]) -> Result<(f64, Vec<f64>)> {
    let m = a.len();
    if m != b.len() {
        return Err(Error::SolverFailure("row count mismatch".into()));
    }
    if m == 0 {
        return Ok((0.0, Vec::new()));
    }
    let n = a[0].len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::SolverFailure("ragged constraint matrix".into()));
    }
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = sign * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-1 objective Σ artificials.
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            cost[j] -= row[j];
        }
        cost[width - 1] -= row[width - 1];
    }
    let max_iter = 50 * (n + m) + 1000;
    for iter in 0..max_iter {
        let bland = iter > 10 * (n + m);
        let entering = if bland {
            (0..n + m).find(|&j| cost[j] < -PIVOT_EPS)
        } else {
            (0..n + m)
                .filter(|&j| cost[j] < -PIVOT_EPS)
                .min_by(|&x, &y| cost[x].total_cmp(&cost[y]))
        };
        let Some(col) = entering else {
            let mut y = vec![0.0; n];
            for (row, &var) in t.iter().zip(&basis) {
                if var < n {
                    y[var] = row[width - 1];
                }
            }
            return Ok(((-cost[width - 1]).max(0.0), y));
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[col] > PIVOT_EPS {
                let ratio = row[width - 1] / row[col];
                let better = match leave {
                    None => true,
                    Some((li, lr)) => ratio < lr - 1e-14 || (ratio <= lr + 1e-14 && basis[i] < basis[li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return Err(Error::SolverFailure("unbounded phase-1 objective".into()));
        };
        let piv = t[r][col];
        for x in t[r].iter_mut() {
            *x /= piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && row[col] != 0.0 {
                let f = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        let f = cost[col];
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= f * p;
        }
        basis[r] = col;
    }
    Err(Error::SolverFailure(format!("no convergence in {max_iter} pivots")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasible_simplex() {
        // y1 + y2 = 1, y1 - y2 = 0.
        let a = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        let (v, y) = phase_one(&a, &[1.0, 0.0]).unwrap();
        assert!(v < 1e-12);
        assert!((y[0] - 0.5).abs() < 1e-12 && (y[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn infeasible_simplex() {
        // y1 + y2 = 1, y1 + y2 = 2.
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let v = phase_one_infeasibility(&a, &[1.0, 2.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // y >= 0 with y1 = -1.
        assert!(phase_one_infeasibility(&[vec![1.0]], &[-1.0]).unwrap() > 0.5);
    }
}
