//! Variational characterizations of the admissible spectrum: one-sided
//! Rayleigh bounds over sampled cone vectors and subspaces, each paired with
//! an equality witness at the analytic optimizer.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::Rng;

use super::{CheckReport, Relation, ReportBuilder, TOL_CHECK, TOL_WITNESS};
use crate::error::{Error, Result};
use crate::geometry::{subspace_in_positive_cone, ConeClass, SubspaceBasis};
use crate::model::{ComplexMatrix, ComplexVector, PseudoHermitianMatrix};
use crate::sampling::{
    complex_normal, sample_cone_vector, sample_positive_frame, sample_positive_subspace,
    SamplerConfig,
};
use crate::spectral::{
    admissible_decomposition, compress, max_rayleigh_on_subspace, rayleigh,
    AdmissibleDecomposition, REALITY_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VariationalOptions {
    /// Samples per bound: vectors, subspaces or frames.
    pub n_samples: usize,
    /// Tolerance for sampled one-sided bounds.
    pub tol: f64,
    /// Tolerance for equality at eigenvector witnesses.
    pub witness_tol: f64,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        VariationalOptions {
            n_samples: 1000,
            tol: TOL_CHECK,
            witness_tol: TOL_WITNESS,
        }
    }
}

/// `Σ_{i∈major} α_i v_i + Σ_{j≤minor} β_j w_j` with `‖β‖ = ρ‖α‖`,
/// `ρ < 0.999`; roles of `v` and `w` swap when `negative` is set.
fn eigen_combination<R: Rng + ?Sized>(
    d: &AdmissibleDecomposition,
    major: RangeInclusive<usize>,
    minor: usize,
    negative: bool,
    rng: &mut R,
) -> ComplexVector {
    let (big, small) = if negative { (&d.w, &d.v) } else { (&d.v, &d.w) };
    let mut x = ComplexVector::zeros(d.v.nrows());
    let mut major_norm = 0.0;
    for k in major {
        let c = complex_normal(rng);
        major_norm += c.norm_sqr();
        x += big.column(k - 1) * c;
    }
    let coeffs: Vec<_> = (0..minor).map(|_| complex_normal(rng)).collect();
    let minor_norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if minor_norm > 0.0 {
        let scale = 0.999 * rng.random::<f64>() * major_norm.sqrt() / minor_norm;
        for (k, c) in coeffs.into_iter().enumerate() {
            x += small.column(k) * (c * scale);
        }
    }
    x
}

/// `span(v_1, …, v_k)` tilted towards the remaining eigenvectors by a
/// log-uniform amount in `[1e-4, 1]`, halved until the result is positive.
fn perturbed_eigenspace<R: Rng + ?Sized>(
    d: &AdmissibleDecomposition,
    k: usize,
    rng: &mut R,
) -> Result<Option<SubspaceBasis>> {
    let sig = d.spectrum.signature();
    let n = sig.n();
    let mut tilt = ComplexMatrix::zeros(n, k);
    for col in 0..k {
        for j in k..sig.p() {
            let c = complex_normal(rng);
            tilt.column_mut(col).axpy(c, &d.v.column(j), Complex64::new(1.0, 0.0));
        }
        for l in 0..sig.q() {
            let c = complex_normal(rng);
            tilt.column_mut(col).axpy(c, &d.w.column(l), Complex64::new(1.0, 0.0));
        }
    }
    let mut eps = 10f64.powf(-4.0 * rng.random::<f64>());
    for _ in 0..30 {
        let x = d.v.columns(0, k) + &tilt * Complex64::new(eps, 0.0);
        let basis = SubspaceBasis::new(x)?;
        if subspace_in_positive_cone(&basis, sig, 1e-6)? {
            return Ok(Some(basis));
        }
        eps *= 0.5;
    }
    Ok(None)
}

fn extremes(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn sampled<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    n: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> Result<ComplexVector>,
) -> Result<(f64, f64)> {
    let values = (0..n)
        .map(|_| draw(rng).and_then(|x| rayleigh(a, &x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(extremes(values))
}

/// `ℛ_A ≥ λ_1` on the positive cone and `ℛ_A ≤ μ_1` on the negative cone,
/// plus the restricted bounds `λ_k ≤ ℛ_A` on `span(v_k, …, v_p)` and
/// `ℛ_A ≤ λ_k` on `span(v_1, …, v_k)` (and their `μ` duals), with equality
/// at the eigenvectors.
pub fn check_rayleigh_bounds<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    opts: &VariationalOptions,
    rng: &mut R,
) -> Result<CheckReport> {
    let sig = a.signature();
    let d = admissible_decomposition(a, REALITY_TOL)?;
    let spec = &d.spectrum;
    let (p, q) = (sig.p(), sig.q());
    let (n, tol, wtol) = (opts.n_samples, opts.tol, opts.witness_tol);
    let mut r = ReportBuilder::new("rayleigh", sig);

    if p > 0 {
        let (lo, _) = sampled(a, n, rng, |g| sample_cone_vector(sig, ConeClass::Positive, g))?;
        r.hard("cone lambda_1 lower", vec![1], lo, Relation::Ge, spec.lambda(1), tol);
        r.diagnostic("cone lambda_1 closeness", lo - spec.lambda(1));
    }
    if q > 0 {
        let (_, hi) = sampled(a, n, rng, |g| sample_cone_vector(sig, ConeClass::Negative, g))?;
        r.hard("cone mu_1 upper", vec![1], hi, Relation::Le, spec.mu(1), tol);
        r.diagnostic("cone mu_1 closeness", spec.mu(1) - hi);
    }
    for k in 1..=p {
        let (lo, _) = sampled(a, n, rng, |g| Ok(eigen_combination(&d, k..=p, 0, false, g)))?;
        r.hard(format!("lambda_{k} lower"), vec![k], lo, Relation::Ge, spec.lambda(k), tol);
        let (_, hi) = sampled(a, n, rng, |g| Ok(eigen_combination(&d, 1..=k, 0, false, g)))?;
        r.hard(format!("lambda_{k} upper"), vec![k], hi, Relation::Le, spec.lambda(k), tol);
        r.hard(format!("lambda_{k} witness"), vec![k], rayleigh(a, &d.v(k))?, Relation::Eq, spec.lambda(k), wtol);
    }
    for l in 1..=q {
        let (_, hi) = sampled(a, n, rng, |g| Ok(eigen_combination(&d, l..=q, 0, true, g)))?;
        r.hard(format!("mu_{l} upper"), vec![l], hi, Relation::Le, spec.mu(l), tol);
        let (lo, _) = sampled(a, n, rng, |g| Ok(eigen_combination(&d, 1..=l, 0, true, g)))?;
        r.hard(format!("mu_{l} lower"), vec![l], lo, Relation::Ge, spec.mu(l), tol);
        r.hard(format!("mu_{l} witness"), vec![l], rayleigh(a, &d.w(l))?, Relation::Eq, spec.mu(l), wtol);
    }
    Ok(r.finish())
}

/// For each `k`: every sampled `k`-dimensional positive subspace (half of
/// them uniform graph subspaces, half tilted eigenspaces) has
/// `max ℛ_A ≥ λ_k`, attained with equality on `span(v_1, …, v_k)`; and
/// every positive `x` pairing to zero with `v_1, …, v_{k−1}` has
/// `ℛ_A(x) ≥ λ_k`, with equality at `v_k`.
pub fn check_courant_fischer<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    opts: &VariationalOptions,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<CheckReport> {
    let sig = a.signature();
    let d = admissible_decomposition(a, REALITY_TOL)?;
    let spec = &d.spectrum;
    let (p, q) = (sig.p(), sig.q());
    let (n, tol, wtol) = (opts.n_samples, opts.tol, opts.witness_tol);
    let mut r = ReportBuilder::new("courant_fischer", sig);
    for k in 1..=p {
        // Odd draws sit near the extremal subspace, where the bound is tight.
        let maxima = (0..n)
            .map(|i| {
                let near = if i % 2 == 1 { perturbed_eigenspace(&d, k, rng)? } else { None };
                let w = match near {
                    Some(w) => w,
                    None => sample_positive_subspace(sig, k, cfg, rng)?,
                };
                max_rayleigh_on_subspace(a, &w)
            })
            .collect::<Result<Vec<_>>>()?;
        let (lo, _) = extremes(maxima);
        r.hard(format!("subspace max k={k}"), vec![k], lo, Relation::Ge, spec.lambda(k), tol);
        r.diagnostic(format!("subspace max closeness k={k}"), lo - spec.lambda(k));
        let top = max_rayleigh_on_subspace(a, &d.positive_eigenspace(k))?;
        r.hard(format!("eigenspace max k={k}"), vec![k], top, Relation::Eq, spec.lambda(k), wtol);

        let (lo, _) = sampled(a, n, rng, |g| Ok(eigen_combination(&d, k..=p, q, false, g)))?;
        r.hard(format!("orthogonal min k={k}"), vec![k], lo, Relation::Ge, spec.lambda(k), tol);
        r.hard(format!("orthogonal witness k={k}"), vec![k], rayleigh(a, &d.v(k))?, Relation::Eq, spec.lambda(k), wtol);
    }
    Ok(r.finish())
}

/// Every sampled positive `k`-frame has `Σ_i ℛ_A(x_i) ≥ λ_1 + ⋯ + λ_k`,
/// and the sum equals the trace of the compression; the eigenvector frame
/// attains the bound.
pub fn check_ky_fan<R: Rng + ?Sized>(
    a: &PseudoHermitianMatrix,
    k: usize,
    opts: &VariationalOptions,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<CheckReport> {
    let sig = a.signature();
    if k == 0 || k > sig.p() {
        return Err(Error::DimensionMismatch {
            expected: format!("1 <= k <= p = {}", sig.p()),
            actual: format!("k = {k}"),
        });
    }
    let d = admissible_decomposition(a, REALITY_TOL)?;
    let target: f64 = d.spectrum.lambdas()[..k].iter().sum();
    let mut r = ReportBuilder::new("ky_fan", sig);
    let mut lo = f64::INFINITY;
    let mut worst_trace_gap = 0.0f64;
    let mut scale = 1.0f64;
    for _ in 0..opts.n_samples {
        let frame = sample_positive_frame(sig, k, cfg, rng)?;
        let ratio_sum = (0..k)
            .map(|j| rayleigh(a, &frame.vector(j)))
            .sum::<Result<f64>>()?;
        let trace = compress(a, &frame)?.trace();
        lo = lo.min(ratio_sum);
        worst_trace_gap = worst_trace_gap.max((ratio_sum - trace).abs());
        scale = scale.max(ratio_sum.abs());
    }
    let idx: Vec<usize> = (1..=k).collect();
    r.hard(format!("frame sum k={k}"), idx.clone(), lo, Relation::Ge, target, opts.tol);
    r.diagnostic(format!("frame sum closeness k={k}"), lo - target);
    r.hard(
        format!("trace consistency k={k}"),
        idx.clone(),
        worst_trace_gap,
        Relation::Le,
        0.0,
        opts.tol * scale,
    );
    let eig_sum = (1..=k).map(|j| rayleigh(a, &d.v(j))).sum::<Result<f64>>()?;
    r.hard(format!("eigenframe k={k}"), idx, eig_sum, Relation::Eq, target, opts.witness_tol);
    Ok(r.finish())
}
