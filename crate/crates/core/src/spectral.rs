//! Eigen-decomposition with cone classification, admissibility checking,
//! the indefinite Rayleigh ratio and compressions onto positive frames.
//!
//! The eigensolve is a general dense one on `A` itself: the pencil `(JA, J)`
//! is indefinite, so definite-pencil solvers do not apply. Eigenvalues come
//! from a complex Schur-based solver; eigenvectors of each eigenvalue
//! cluster are taken from the numerical null space of `A − λI` and then
//! re-orthonormalized for the pairing inside the cluster, which also
//! refines the eigenvalues by a small Hermitian solve.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{
    cone_class_of, pair_unchecked, self_pairing, ConeClass, Orientation, PseudoOrthonormalFrame,
    SubspaceBasis, TOL_NULL,
};
use crate::linalg::{column_norm, hermitian_eigen, singular_values, smallest_right_singular};
use crate::model::{
    build_metric, AdmissibleSpectrum, ComplexMatrix, ComplexVector, PseudoHermitianMatrix,
};

/// Default relative bound on `max |Im λ|` for admissibility.
pub const REALITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    /// Eigenvalues closer than `cluster_rel · ‖A‖` are treated as one cluster.
    pub cluster_rel: f64,
    /// Accepted eigenpair residual `‖Av − λv‖ ≤ residual_rel · ‖A‖ · ‖v‖`.
    pub residual_rel: f64,
    /// Null band for classifying eigenvectors.
    pub tol_null: f64,
    /// Normalized eigenvector matrices with `σ_min` below this are defective.
    pub rank_rel: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            cluster_rel: 1e-7,
            residual_rel: 1e-8,
            tol_null: TOL_NULL,
            rank_rel: 1e-7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedEigenSystem {
    pub eigenvalues: Vec<Complex64>,
    /// Eigenvectors as columns; definite ones are pseudo-normalized
    /// (`⟨v, v⟩ = ±1`), null ones Euclidean-normalized.
    pub eigenvectors: ComplexMatrix,
    pub cone_classes: Vec<ConeClass>,
    /// `max |Im λ|` over the raw solver output.
    pub reality_defect: f64,
}

impl ClassifiedEigenSystem {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn count(&self, class: ConeClass) -> usize {
        self.cone_classes.iter().filter(|&&c| c == class).count()
    }
}

fn to_faer(m: &ComplexMatrix) -> faer::Mat<faer::c64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn raw_eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    to_faer(m)
        .eigenvalues()
        .map_err(|e| Error::SolverFailure(format!("{e:?}")))
}

/// Groups indices of eigenvalues (sorted by real then imaginary part) whose
/// consecutive distance is below `tol`.
fn cluster(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .re
            .total_cmp(&values[b].re)
            .then(values[a].im.total_cmp(&values[b].im))
    });
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match clusters.last_mut() {
            Some(c) if c.iter().any(|&j| (values[j] - values[idx]).norm() <= tol) => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }
    clusters
}

pub fn eigendecompose(a: &PseudoHermitianMatrix) -> Result<ClassifiedEigenSystem> {
    eigendecompose_with(a, &EigenOptions::default())
}

pub fn eigendecompose_with(
    a: &PseudoHermitianMatrix,
    opts: &EigenOptions,
) -> Result<ClassifiedEigenSystem> {
    let sig = a.signature();
    let n = sig.n();
    let m = a.matrix();
    let metric = build_metric(sig);
    let scale = a.norm_max().max(f64::MIN_POSITIVE);

    let raw = raw_eigenvalues(m)?;
    let reality_defect = raw.iter().map(|z| z.im.abs()).fold(0.0, f64::max);

    let mut eigenvalues = Vec::with_capacity(n);
    let mut columns: Vec<ComplexVector> = Vec::with_capacity(n);

    for members in cluster(&raw, opts.cluster_rel * scale) {
        let r = members.len();
        let center = members.iter().map(|&i| raw[i]).sum::<Complex64>() / r as f64;
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] -= center;
        }
        let (_, basis) = smallest_right_singular(&shifted, r);

        // J-Gram of the cluster subspace, split by sign.
        let g = basis.adjoint() * metric.apply_left(&basis);
        let (d, w) = hermitian_eigen(&g);
        let mut null_raw = members.iter().map(|&i| raw[i]).collect::<Vec<_>>().into_iter();
        for orientation in [Orientation::Negative, Orientation::Positive] {
            let sigma = orientation.sign();
            let picked: Vec<usize> = (0..r).filter(|&i| d[i] * sigma > opts.tol_null).collect();
            if picked.is_empty() {
                continue;
            }
            let t = ComplexMatrix::from_fn(n, picked.len(), |row, c| {
                let k = picked[c];
                let col: Complex64 = (0..r).map(|l| basis[(row, l)] * w[(l, k)]).sum();
                col / d[k].abs().sqrt()
            });
            let h = t.adjoint() * metric.apply_left(&(m * &t));
            let (theta, z) = hermitian_eigen(&h);
            let vecs = &t * z;
            for (c, th) in theta.iter().enumerate() {
                eigenvalues.push(Complex64::new(sigma * th, 0.0));
                columns.push(vecs.column(c).into_owned());
            }
        }
        let nulls: Vec<usize> = (0..r).filter(|&i| d[i].abs() <= opts.tol_null).collect();
        for &k in &nulls {
            let v = &basis * w.column(k);
            let lam = null_raw.next().unwrap_or(center);
            eigenvalues.push(lam);
            columns.push(v);
        }
    }

    let vecs = ComplexMatrix::from_columns(&columns);
    let mut cone_classes = Vec::with_capacity(n);
    for (j, lam) in eigenvalues.iter().enumerate() {
        let v = vecs.column(j);
        let vnorm = v.norm();
        let residual = (m * v - v * *lam).norm() / vnorm.max(f64::MIN_POSITIVE);
        if residual.is_nan() || residual > opts.residual_rel * scale {
            return Err(Error::DefectiveMatrix { residual });
        }
        let s = self_pairing(v.as_slice(), sig);
        cone_classes.push(cone_class_of(s, vnorm * vnorm, opts.tol_null));
    }

    let normalized = ComplexMatrix::from_fn(n, n, |i, j| vecs[(i, j)] / column_norm(&vecs, j));
    let sv = singular_values(&normalized);
    let sigma_min = sv.last().copied().unwrap_or(0.0);
    if sigma_min.is_nan() || sigma_min < opts.rank_rel {
        return Err(Error::DefectiveMatrix {
            residual: sigma_min,
        });
    }

    Ok(ClassifiedEigenSystem {
        eigenvalues,
        eigenvectors: vecs,
        cone_classes,
        reality_defect,
    })
}

/// Admissible spectrum together with pseudo-orthonormal eigenvectors:
/// column `k−1` of `v` belongs to `λ_k`, column `k−1` of `w` to `μ_k`.
#[derive(Clone, Debug)]
pub struct AdmissibleDecomposition {
    pub spectrum: AdmissibleSpectrum,
    pub v: ComplexMatrix,
    pub w: ComplexMatrix,
}

impl AdmissibleDecomposition {
    /// `v_k`, 1-based.
    pub fn v(&self, k: usize) -> ComplexVector {
        self.v.column(k - 1).into_owned()
    }

    /// `w_k`, 1-based.
    pub fn w(&self, k: usize) -> ComplexVector {
        self.w.column(k - 1).into_owned()
    }

    /// `span(v_1, …, v_k)`.
    pub fn positive_eigenspace(&self, k: usize) -> SubspaceBasis {
        SubspaceBasis::new(self.v.columns(0, k).into_owned()).expect("eigenvectors independent")
    }
}

pub fn admissible_decomposition(
    a: &PseudoHermitianMatrix,
    reality_tol: f64,
) -> Result<AdmissibleDecomposition> {
    let sig = a.signature();
    let sys = eigendecompose(a)?;
    let tol = reality_tol * a.norm_max().max(1.0);
    if sys.reality_defect > tol {
        return Err(Error::ComplexSpectrum {
            defect: sys.reality_defect,
            tol,
        });
    }
    let (pos, neg, null) = (
        sys.count(ConeClass::Positive),
        sys.count(ConeClass::Negative),
        sys.count(ConeClass::Null),
    );
    if pos != sig.p() || neg != sig.q() {
        return Err(Error::WrongConeCount {
            positive: pos,
            negative: neg,
            null,
            p: sig.p(),
            q: sig.q(),
        });
    }
    let mut pos_idx: Vec<usize> = (0..sys.len())
        .filter(|&i| sys.cone_classes[i] == ConeClass::Positive)
        .collect();
    let mut neg_idx: Vec<usize> = (0..sys.len())
        .filter(|&i| sys.cone_classes[i] == ConeClass::Negative)
        .collect();
    pos_idx.sort_by(|&a, &b| sys.eigenvalues[a].re.total_cmp(&sys.eigenvalues[b].re));
    neg_idx.sort_by(|&a, &b| sys.eigenvalues[b].re.total_cmp(&sys.eigenvalues[a].re));
    let lambdas = pos_idx.iter().map(|&i| sys.eigenvalues[i].re).collect();
    let mus = neg_idx.iter().map(|&i| sys.eigenvalues[i].re).collect();
    let spectrum = AdmissibleSpectrum::new(lambdas, mus)?;
    let n = sig.n();
    let v = ComplexMatrix::from_fn(n, pos_idx.len(), |r, c| sys.eigenvectors[(r, pos_idx[c])]);
    let w = ComplexMatrix::from_fn(n, neg_idx.len(), |r, c| sys.eigenvectors[(r, neg_idx[c])]);
    Ok(AdmissibleDecomposition { spectrum, v, w })
}

/// Classified spectrum of an admissible matrix; `reality_tol` is relative
/// to `max(1, ‖A‖_max)`.
pub fn check_admissible(a: &PseudoHermitianMatrix, reality_tol: f64) -> Result<AdmissibleSpectrum> {
    admissible_decomposition(a, reality_tol).map(|d| d.spectrum)
}

/// `ℛ_A(x) = x†Ax / x†x`.
pub fn rayleigh(a: &PseudoHermitianMatrix, x: &ComplexVector) -> Result<f64> {
    let sig = a.signature();
    if x.len() != sig.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", sig.n()),
            actual: format!("length {}", x.len()),
        });
    }
    let denom = self_pairing(x.as_slice(), sig);
    if denom.abs() < TOL_NULL * x.norm_squared() || denom == 0.0 {
        return Err(Error::NullVector { pairing: denom });
    }
    let ax = a.matrix() * x;
    let num = pair_unchecked(ax.as_slice(), x.as_slice(), sig);
    Ok(num.re / denom)
}

#[derive(Clone, Debug)]
pub struct CompressionResult {
    pub frame: PseudoOrthonormalFrame,
    /// `m_kj = ⟨A x_j, x_k⟩`, Hermitian.
    pub compressed: ComplexMatrix,
    /// Eigenvalues of `compressed`, ascending.
    pub etas: Vec<f64>,
}

impl CompressionResult {
    pub fn trace(&self) -> f64 {
        self.etas.iter().sum()
    }

    pub fn top(&self) -> f64 {
        *self.etas.last().expect("non-empty frame")
    }
}

pub fn compression_matrix(
    a: &PseudoHermitianMatrix,
    frame: &PseudoOrthonormalFrame,
) -> Result<ComplexMatrix> {
    if frame.orientation() != Orientation::Positive {
        return Err(Error::OrientationMismatch {
            index: 0,
            pivot: -1.0,
        });
    }
    if frame.signature() != a.signature() {
        return Err(Error::DimensionMismatch {
            expected: format!("signature {}", a.signature()),
            actual: format!("signature {}", frame.signature()),
        });
    }
    let x = frame.vectors();
    let jax = build_metric(a.signature()).apply_left(&(a.matrix() * x));
    let h = x.adjoint() * jax;
    Ok((&h + h.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Restriction of `P A P` to the span of a positive frame, `P = XX†`.
pub fn compress(a: &PseudoHermitianMatrix, frame: &PseudoOrthonormalFrame) -> Result<CompressionResult> {
    let compressed = compression_matrix(a, frame)?;
    let (etas, _) = hermitian_eigen(&compressed);
    Ok(CompressionResult {
        frame: frame.clone(),
        compressed,
        etas,
    })
}

/// `max_{x ∈ W} ℛ_A(x)` over a positive subspace `W`, computed exactly as
/// the top eigenvalue of the compression onto a frame for `W`.
pub fn max_rayleigh_on_subspace(a: &PseudoHermitianMatrix, basis: &SubspaceBasis) -> Result<f64> {
    let frame = crate::geometry::pseudo_orthonormalize(basis.columns(), a.signature(), Orientation::Positive)?;
    Ok(compress(a, &frame)?.top())
}
