//! Dense Phase-I simplex for `A x = b, x ≥ 0` with Bland's rule.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOne {
    /// Optimal sum of artificial variables; zero iff the system is feasible.
    pub objective: f64,
    /// Values of the structural variables at the final basis.
    pub x: Vec<f64>,
    pub pivots: usize,
}

/// Minimizes the sum of artificials for `A x + a = b` (rows of `A` given
/// in `rows`). Bland's rule guarantees termination; the iteration guard is
/// only a safety net.
pub fn phase_one(rows: &[Vec<f64>], b: &[f64]) -> Result<PhaseOne> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // Row-major tableau; last row holds the reduced costs.
    let mut t = vec![0.0; (m + 1) * width];
    let at = |r: usize, c: usize| r * width + c;
    for (i, (row, &bi)) in rows.iter().zip(b).enumerate() {
        let sign = if bi < 0.0 { -1.0 } else { 1.0 };
        for (j, &v) in row.iter().enumerate() {
            t[at(i, j)] = sign * v;
        }
        t[at(i, n + i)] = 1.0;
        t[at(i, width - 1)] = sign * bi;
    }
    for j in (0..n).chain(std::iter::once(width - 1)) {
        let s: f64 = (0..m).map(|i| t[at(i, j)]).sum();
        t[at(m, j)] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let guard = 50 * (n + m + 1);
    let mut pivots = 0;
    while let Some(enter) = (0..n + m).find(|&j| t[at(m, j)] < -PIVOT_EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[at(i, enter)];
            if a > PIVOT_EPS {
                let ratio = t[at(i, width - 1)] / a;
                leave = match leave {
                    Some((li, lr))
                        if ratio > lr + PIVOT_EPS
                            || (ratio >= lr - PIVOT_EPS && basis[i] > basis[li]) =>
                    {
                        Some((li, lr))
                    }
                    _ => Some((i, ratio)),
                };
            }
        }
        // Phase I is bounded below by zero, so an entering column always
        // has a positive entry; treat the contrary as numerical breakdown.
        let Some((row, _)) = leave else {
            return Err(Error::SolverFailure("phase-one column without pivot".into()));
        };
        pivots += 1;
        if pivots > guard {
            return Err(Error::CyclingGuard { iterations: pivots });
        }
        let piv = t[at(row, enter)];
        for c in 0..width {
            t[at(row, c)] /= piv;
        }
        for r in 0..=m {
            if r == row {
                continue;
            }
            let f = t[at(r, enter)];
            if f != 0.0 {
                for c in 0..width {
                    t[at(r, c)] -= f * t[at(row, c)];
                }
            }
        }
        basis[row] = enter;
    }
    let mut x = vec![0.0; n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[at(i, width - 1)].max(0.0);
        }
    }
    Ok(PhaseOne {
        objective: (-t[at(m, width - 1)]).max(0.0),
        x,
        pivots,
    })
}
