//! Flag characterization of partial sums `λ_{i_1} + ⋯ + λ_{i_m}`.
//!
//! For a positive flag `V_{i_1} ⊂ ⋯ ⊂ V_{i_m}`, a frame is subordinate when
//! `x_j ∈ V_{i_j}`. On the eigenflag every subordinate frame compresses to
//! eigenvalues `η_j ≤ λ_{i_j}`; on an arbitrary flag some subordinate frame
//! reaches `Σ η_j ≥ Σ λ_{i_j}`, which is searched for by slot-wise ascent.

use num_complex::Complex64;
use rand::Rng;

use super::{CheckReport, Relation, ReportBuilder, TOL_CHECK, TOL_WITNESS};
use crate::error::Result;
use crate::geometry::{pseudo_orthonormalize, Orientation, PseudoOrthonormalFrame};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, orthogonal_complement};
use crate::model::{ComplexMatrix, IndexTuple, PseudoHermitianMatrix};
use crate::sampling::{
    gaussian_matrix, sample_flag, sample_positive_frame, sample_subordinate, PositiveFlag,
    SamplerConfig,
};
use crate::spectral::{admissible_decomposition, compress, compression_matrix, REALITY_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WielandtOptions {
    /// Eigenflag passes; each draws `n_frames` subordinate frames.
    pub n_flags: usize,
    pub n_frames: usize,
    /// Random flags handed to the ascent.
    pub n_ascent_flags: usize,
    pub ascent_iters: usize,
    /// Sweep stops once the objective gains less than this.
    pub ascent_gain_tol: f64,
    /// Random starts in addition to the greedy one.
    pub restarts: usize,
    /// Sampled `(p−1)`-dimensional subspaces for interlacing.
    pub n_interlace: usize,
    pub tol: f64,
    pub witness_tol: f64,
    /// Tolerance for the ascent to count as reaching the target.
    pub soft_tol: f64,
}

impl Default for WielandtOptions {
    fn default() -> Self {
        WielandtOptions {
            n_flags: 100,
            n_frames: 20,
            n_ascent_flags: 50,
            ascent_iters: 200,
            ascent_gain_tol: 1e-10,
            restarts: 3,
            n_interlace: 50,
            tol: TOL_CHECK,
            witness_tol: TOL_WITNESS,
            soft_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AscentOutcome {
    /// `Σ η_j` of the best frame found.
    pub value: f64,
    pub frame: PseudoOrthonormalFrame,
    /// Sweeps used by the best start.
    pub iterations: usize,
    pub converged: bool,
}

/// Coordinates of a subordinate frame relative to a pseudo-orthonormal
/// basis `e_1, …, e_d` adapted to the flag: column `j` is supported on the
/// first `i_j` rows, and columns are orthonormal.
struct SlotProblem<'a> {
    h: &'a ComplexMatrix,
    dims: &'a [usize],
}

impl SlotProblem<'_> {
    fn objective(&self, y: &ComplexMatrix) -> f64 {
        (y.adjoint() * self.h * y).trace().re
    }

    /// Replaces column `j` by the best unit vector in its level that stays
    /// orthogonal to the other columns.
    fn update(&self, y: &mut ComplexMatrix, j: usize) {
        let dim = self.dims[j];
        let others: Vec<usize> = (0..y.ncols()).filter(|&k| k != j).collect();
        let c = ComplexMatrix::from_fn(dim, others.len(), |r, k| y[(r, others[k])]);
        let z = orthogonal_complement(&c, dim, 1e-10);
        if z.ncols() == 0 {
            return;
        }
        let hj = z.adjoint() * self.h.view((0, 0), (dim, dim)) * &z;
        let (_, vecs) = hermitian_eigen(&hj);
        let best = &z * vecs.column(vecs.ncols() - 1);
        let mut col = y.column_mut(j);
        col.fill(Complex64::new(0.0, 0.0));
        col.rows_mut(0, dim).copy_from(&best);
    }

    /// Gram–Schmidt in slot order; keeps the span and the support pattern.
    fn orthonormalize(&self, y: &mut ComplexMatrix) {
        for j in 0..y.ncols() {
            let mut v = y.column(j).into_owned();
            for k in 0..j {
                let proj = y.column(k).dotc(&v);
                v -= y.column(k) * proj;
            }
            let norm = v.norm();
            y.set_column(j, &(v / Complex64::new(norm, 0.0)));
        }
    }

    /// Gradient of `tr(H|span Y)` at orthonormal `Y`, restricted to the
    /// support pattern.
    fn masked_gradient(&self, y: &ComplexMatrix) -> ComplexMatrix {
        let hy = self.h * y;
        let mut g = &hy - y * (y.adjoint() * &hy);
        for (j, &dim) in self.dims.iter().enumerate() {
            let rows = g.nrows() - dim;
            g.column_mut(j).rows_mut(dim, rows).fill(Complex64::new(0.0, 0.0));
        }
        g
    }

    /// Backtracking gradient steps; moves several slots at once, which
    /// slot-wise updates cannot do when a slot has a single feasible
    /// direction.
    fn gradient_phase(&self, y: &mut ComplexMatrix, steps: usize, gain_tol: f64) {
        let mut value = self.objective(y);
        let mut alpha = 1.0 / self.h.norm().max(1e-300);
        for _ in 0..steps {
            let g = self.masked_gradient(y);
            let slope = g.norm_squared();
            if slope < gain_tol * gain_tol {
                return;
            }
            let mut accepted = false;
            for _ in 0..40 {
                let mut trial = &*y + &g * Complex64::new(alpha, 0.0);
                self.orthonormalize(&mut trial);
                let next = self.objective(&trial);
                if next >= value + 1e-4 * alpha * slope {
                    *y = trial;
                    value = next;
                    accepted = true;
                    alpha *= 2.0;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                return;
            }
        }
    }

    fn sweep_until_stalled(&self, y: &mut ComplexMatrix, iters: usize, gain_tol: f64) -> (usize, bool) {
        let mut value = self.objective(y);
        for it in 1..=iters {
            for j in (0..y.ncols()).rev() {
                self.update(y, j);
            }
            self.gradient_phase(y, 20, gain_tol);
            let next = self.objective(y);
            let gain = next - value;
            value = next;
            if gain < gain_tol {
                return (it, true);
            }
        }
        (iters, false)
    }

    fn random_start<R: Rng + ?Sized>(&self, rng: &mut R) -> ComplexMatrix {
        let d = self.h.nrows();
        let m = self.dims.len();
        let mut y = ComplexMatrix::zeros(d, m);
        for j in 0..m {
            let dim = self.dims[j];
            let mut v = ComplexMatrix::zeros(d, 1);
            v.view_mut((0, 0), (dim, 1)).copy_from(&gaussian_matrix(dim, 1, rng));
            for k in 0..j {
                let proj = (y.column(k).adjoint() * &v)[(0, 0)];
                v -= y.column(k) * proj;
            }
            let norm = v.norm();
            y.set_column(j, &(v.column(0) / Complex64::new(norm, 0.0)));
        }
        y
    }
}

/// Searches for a frame subordinate to `flag` maximizing `Σ η_j`: a greedy
/// start filled from the innermost slot outward plus `restarts` random
/// starts. Each start alternates slot-wise sweeps with masked gradient
/// steps until an iteration gains less than `gain_tol`.
pub fn ascend_subordinate<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    flag: &PositiveFlag,
    iters: usize,
    gain_tol: f64,
    restarts: usize,
    rng: &mut R,
) -> Result<AscentOutcome> {
    let sig = a.signature();
    let e = pseudo_orthonormalize(flag.basis().columns(), sig, Orientation::Positive)?;
    let h = compression_matrix(a, &e)?;
    let problem = SlotProblem {
        h: &h,
        dims: flag.tuple().indices(),
    };
    let mut best: Option<(f64, ComplexMatrix, usize, bool)> = None;
    for start in 0..=restarts {
        let mut y = if start == 0 {
            let mut y = ComplexMatrix::zeros(h.nrows(), flag.depth());
            for j in 0..flag.depth() {
                problem.update(&mut y, j);
            }
            y
        } else {
            problem.random_start(rng)
        };
        let (it, converged) = problem.sweep_until_stalled(&mut y, iters, gain_tol);
        let value = problem.objective(&y);
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, y, it, converged));
        }
    }
    let (_, y, iterations, converged) = best.expect("at least one start");
    let frame = pseudo_orthonormalize(&(e.vectors() * y), sig, Orientation::Positive)?;
    let value = compress(a, &frame)?.trace();
    Ok(AscentOutcome {
        value,
        frame,
        iterations,
        converged,
    })
}

/// Three sub-checks for the tuple `i`:
/// hard bounds `η_j ≤ λ_{i_j}` and `Σ η_j ≤ Σ λ_{i_j}` for frames
/// subordinate to the eigenflag; soft attainment `Σ η_j ≥ Σ λ_{i_j}` by
/// ascent on random flags; and interlacing `ξ_i ≥ λ_i` for compressions
/// onto `(p−1)`-dimensional positive subspaces.
pub fn check_wielandt_flag<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    tuple: &IndexTuple,
    opts: &WielandtOptions,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<CheckReport> {
    let sig = a.signature();
    let d = admissible_decomposition(a, REALITY_TOL)?;
    let spec = &d.spectrum;
    let idx = tuple.indices().to_vec();
    let target: f64 = idx.iter().map(|&i| spec.lambda(i)).sum();
    let mut r = ReportBuilder::new("wielandt", sig);

    let eigen_cols = ComplexMatrix::from_fn(sig.n(), idx.len(), |row, j| d.v[(row, idx[j] - 1)]);
    let eigen_frame = pseudo_orthonormalize(&eigen_cols, sig, Orientation::Positive)?;
    let eigen_sum = compress(a, &eigen_frame)?.trace();
    r.hard("eigenvector frame", idx.clone(), eigen_sum, Relation::Eq, target, opts.witness_tol);

    let eigenflag = PositiveFlag::eigenflag(&d, tuple.clone())?;
    let mut worst_sum = f64::NEG_INFINITY;
    let mut worst_slot = vec![f64::NEG_INFINITY; idx.len()];
    for _ in 0..opts.n_flags * opts.n_frames {
        let frame = sample_subordinate(&eigenflag, cfg.max_retries, rng)?;
        let etas = compress(a, &frame)?.etas;
        worst_sum = worst_sum.max(etas.iter().sum());
        for (w, eta) in worst_slot.iter_mut().zip(&etas) {
            *w = w.max(*eta);
        }
    }
    if opts.n_flags * opts.n_frames > 0 {
        r.hard("eigenflag sum", idx.clone(), worst_sum, Relation::Le, target, opts.tol);
        for (j, (&i, &eta)) in idx.iter().zip(&worst_slot).enumerate() {
            r.hard(format!("eigenflag slot {}", j + 1), vec![i], eta, Relation::Le, spec.lambda(i), opts.tol);
        }
    }

    let mut unconverged = 0usize;
    let mut total_iters = 0usize;
    for f in 0..opts.n_ascent_flags {
        let flag = sample_flag(sig, tuple, cfg, rng)?;
        let out = ascend_subordinate(a, &flag, opts.ascent_iters, opts.ascent_gain_tol, opts.restarts, rng)?;
        unconverged += usize::from(!out.converged);
        total_iters += out.iterations;
        r.push(format!("ascent flag {f}"), idx.clone(), Vec::new(), out.value, Relation::Ge, target, opts.soft_tol, false);
    }
    if opts.n_ascent_flags > 0 {
        r.diagnostic("ascent unconverged", unconverged as f64);
        r.diagnostic("ascent mean sweeps", total_iters as f64 / opts.n_ascent_flags as f64);
    }

    let p = sig.p();
    if p >= 2 && opts.n_interlace > 0 {
        let mut lowest = vec![f64::INFINITY; p - 1];
        for _ in 0..opts.n_interlace {
            let frame = sample_positive_frame(sig, p - 1, cfg, rng)?;
            let xi = hermitian_eigenvalues(&compression_matrix(a, &frame)?);
            for (l, x) in lowest.iter_mut().zip(xi) {
                *l = l.min(x);
            }
        }
        for (i, &xi) in lowest.iter().enumerate() {
            r.hard(format!("interlace i={}", i + 1), vec![i + 1], xi, Relation::Ge, spec.lambda(i + 1), opts.tol);
        }
    }
    Ok(r.finish())
}
