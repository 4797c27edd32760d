//! Signature-aware matrix types: the metric `J`, pseudo-Hermitian and
//! pseudo-unitary matrices, admissible spectra and index tuples.
//!
//! Eigenvalue indexing follows the convention
//! `λ_p ≥ … ≥ λ_1 > μ_1 ≥ … ≥ μ_q`: `λ_1` is the smallest positive-type
//! eigenvalue and `μ_1` the largest negative-type one. Indices exposed by
//! [`AdmissibleSpectrum::lambda`] and [`AdmissibleSpectrum::mu`] are 1-based.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Default absolute tolerance for structural checks on the max-norm.
pub const TOL_STRUCT: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    p: usize,
    q: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    p: usize,
    q: usize,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;
    fn try_from(raw: RawSignature) -> Result<Self> {
        Signature::new(raw.p, raw.q)
    }
}

impl From<Signature> for RawSignature {
    fn from(sig: Signature) -> Self {
        RawSignature { p: sig.p, q: sig.q }
    }
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::EmptySignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal entry of `J` in slot `i` (0-based).
    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn check_square(&self, m: &ComplexMatrix) -> Result<()> {
        let n = self.n();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n}x{n}"),
                actual: format!("{}x{}", m.nrows(), m.ncols()),
            });
        }
        Ok(())
    }

    pub(crate) fn check_rows(&self, m: &ComplexMatrix) -> Result<()> {
        if m.nrows() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.n()),
                actual: format!("{} rows", m.nrows()),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The metric `J = diag(1, …, 1, -1, …, -1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJ {
    signature: Signature,
}

pub fn build_metric(sig: Signature) -> MetricJ {
    MetricJ { signature: sig }
}

impl MetricJ {
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.signature.n()).map(|i| self.signature.sign(i)).collect()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.signature.n();
        ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self.signature.sign(i), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `J · m` (row scaling).
    pub fn apply_left(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let sig = self.signature;
        ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * sig.sign(i))
    }

    /// `m · J` (column scaling).
    pub fn apply_right(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let sig = self.signature;
        ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * sig.sign(j))
    }
}

/// `M† = J M* J`, the adjoint for the indefinite pairing.
pub fn matrix_dagger(m: &ComplexMatrix, sig: Signature) -> Result<ComplexMatrix> {
    sig.check_square(m)?;
    Ok(dagger_unchecked(m, sig))
}

pub(crate) fn dagger_unchecked(m: &ComplexMatrix, sig: Signature) -> ComplexMatrix {
    let n = m.nrows();
    ComplexMatrix::from_fn(n, n, |i, j| m[(j, i)].conj() * (sig.sign(i) * sig.sign(j)))
}

pub(crate) fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |A J - J A*|`.
pub fn pseudo_hermitian_residual(m: &ComplexMatrix, sig: Signature) -> Result<f64> {
    sig.check_square(m)?;
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = m[(i, j)] * sig.sign(j);
            let rhs = m[(j, i)].conj() * sig.sign(i);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

pub fn validate_pseudo_hermitian(m: &ComplexMatrix, sig: Signature, tol: f64) -> Result<bool> {
    Ok(pseudo_hermitian_residual(m, sig)? <= tol)
}

/// `max |U J U* - J|`.
pub fn pseudo_unitary_residual(u: &ComplexMatrix, sig: Signature) -> Result<f64> {
    sig.check_square(u)?;
    let metric = build_metric(sig);
    let ujus = metric.apply_right(u) * u.adjoint();
    Ok(max_abs(&(ujus - metric.matrix())))
}

pub fn validate_pseudo_unitary(u: &ComplexMatrix, sig: Signature, tol: f64) -> Result<bool> {
    Ok(pseudo_unitary_residual(u, sig)? <= tol)
}

fn check_finite(m: &ComplexMatrix) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// A matrix with `A J = J A*`, i.e. self-adjoint for the indefinite pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoHermitianMatrix {
    signature: Signature,
    entries: ComplexMatrix,
}

impl PseudoHermitianMatrix {
    /// Validates shape, finiteness and `‖AJ − JA*‖_max ≤ tol`.
    pub fn new(sig: Signature, entries: ComplexMatrix, tol: f64) -> Result<Self> {
        sig.check_square(&entries)?;
        check_finite(&entries)?;
        let residual = pseudo_hermitian_residual(&entries, sig)?;
        if residual > tol {
            return Err(Error::NotPseudoHermitian { residual, tol });
        }
        Ok(PseudoHermitianMatrix {
            signature: sig,
            entries,
        })
    }

    /// Projects an arbitrary square matrix onto the pseudo-Hermitian part
    /// `(M + M†) / 2`. The result satisfies the structural relation exactly.
    pub fn symmetrized(sig: Signature, m: &ComplexMatrix) -> Result<Self> {
        sig.check_square(m)?;
        check_finite(m)?;
        let n = m.nrows();
        let entries = ComplexMatrix::from_fn(n, n, |i, j| {
            let s = sig.sign(i) * sig.sign(j);
            (m[(i, j)] + m[(j, i)].conj() * s) * 0.5
        });
        Ok(PseudoHermitianMatrix {
            signature: sig,
            entries,
        })
    }

    pub fn from_real_diagonal(sig: Signature, diag: &[f64]) -> Result<Self> {
        let n = sig.n();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} diagonal entries"),
                actual: format!("{}", diag.len()),
            });
        }
        let entries = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(sig, entries, 0.0)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.entries
    }

    pub fn norm_max(&self) -> f64 {
        max_abs(&self.entries)
    }

    /// Real diagonal entries in slot order.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.signature.n()).map(|i| self.entries[(i, i)].re).collect()
    }

    /// `J A`, which is Hermitian.
    pub fn j_times(&self) -> ComplexMatrix {
        build_metric(self.signature).apply_left(&self.entries)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.signature != other.signature {
            return Err(Error::DimensionMismatch {
                expected: format!("signature {}", self.signature),
                actual: format!("signature {}", other.signature),
            });
        }
        Ok(PseudoHermitianMatrix {
            signature: self.signature,
            entries: &self.entries + &other.entries,
        })
    }

    /// `A + c I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut entries = self.entries.clone();
        for i in 0..entries.nrows() {
            entries[(i, i)] += Complex64::new(c, 0.0);
        }
        PseudoHermitianMatrix {
            signature: self.signature,
            entries,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        PseudoHermitianMatrix {
            signature: self.signature,
            entries: &self.entries * Complex64::new(c, 0.0),
        }
    }

    /// `U A U⁻¹`, re-symmetrized to remove rounding asymmetry.
    pub fn conjugated(&self, u: &PseudoUnitary) -> Result<Self> {
        if u.signature() != self.signature {
            return Err(Error::DimensionMismatch {
                expected: format!("signature {}", self.signature),
                actual: format!("signature {}", u.signature()),
            });
        }
        let m = u.matrix() * &self.entries * u.inverse();
        Self::symmetrized(self.signature, &m)
    }
}

/// A matrix preserving the indefinite pairing: `U J U* = J`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoUnitary {
    signature: Signature,
    entries: ComplexMatrix,
}

impl PseudoUnitary {
    pub fn new(sig: Signature, entries: ComplexMatrix, tol: f64) -> Result<Self> {
        sig.check_square(&entries)?;
        check_finite(&entries)?;
        let residual = pseudo_unitary_residual(&entries, sig)?;
        if residual > tol {
            return Err(Error::NotPseudoUnitary { residual, tol });
        }
        Ok(PseudoUnitary {
            signature: sig,
            entries,
        })
    }

    pub fn identity(sig: Signature) -> Self {
        PseudoUnitary {
            signature: sig,
            entries: ComplexMatrix::identity(sig.n(), sig.n()),
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.entries
    }

    /// `U⁻¹ = U† = J U* J`.
    pub fn inverse(&self) -> ComplexMatrix {
        dagger_unchecked(&self.entries, self.signature)
    }

    /// Spectral condition number `σ_max / σ_min`.
    pub fn condition_number(&self) -> f64 {
        let sv = self.entries.clone().singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    pub fn compose(&self, other: &Self) -> Self {
        PseudoUnitary {
            signature: self.signature,
            entries: &self.entries * &other.entries,
        }
    }
}

/// Classified real spectrum of an admissible matrix.
///
/// `lambdas` ascending (`lambdas[0] = λ_1`), `mus` descending (`mus[0] = μ_1`),
/// with the strict gap `λ_1 > μ_1` whenever both sides are non-empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleSpectrum {
    lambdas: Vec<f64>,
    mus: Vec<f64>,
}

impl AdmissibleSpectrum {
    pub fn new(lambdas: Vec<f64>, mus: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() && mus.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if lambdas.iter().chain(&mus).any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite eigenvalue".into()));
        }
        if lambdas.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpectrum(format!(
                "lambdas must be ascending: {lambdas:?}"
            )));
        }
        if mus.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum(format!(
                "mus must be descending: {mus:?}"
            )));
        }
        if let (Some(&l1), Some(&m1)) = (lambdas.first(), mus.first()) {
            if l1 <= m1 {
                let other = mus.last().copied().unwrap_or(m1)
                    > lambdas.last().copied().unwrap_or(l1);
                return Err(Error::GapViolation {
                    lambda_1: l1,
                    mu_1: m1,
                    other_component: other,
                });
            }
        }
        Ok(AdmissibleSpectrum { lambdas, mus })
    }

    /// Sorts unordered positive-type and negative-type eigenvalues into the
    /// storage convention before validating.
    pub fn from_unsorted(mut lambdas: Vec<f64>, mut mus: Vec<f64>) -> Result<Self> {
        lambdas.sort_by(f64::total_cmp);
        mus.sort_by(|a, b| b.total_cmp(a));
        Self::new(lambdas, mus)
    }

    pub fn signature(&self) -> Signature {
        Signature {
            p: self.lambdas.len(),
            q: self.mus.len(),
        }
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[f64] {
        &self.mus
    }

    /// `λ_k`, 1-based.
    pub fn lambda(&self, k: usize) -> f64 {
        self.lambdas[k - 1]
    }

    /// `μ_k`, 1-based.
    pub fn mu(&self, k: usize) -> f64 {
        self.mus[k - 1]
    }

    /// `λ_1 − μ_1`, or `+∞` when one side is empty.
    pub fn gap(&self) -> f64 {
        match (self.lambdas.first(), self.mus.first()) {
            (Some(l), Some(m)) => l - m,
            _ => f64::INFINITY,
        }
    }

    pub fn total(&self) -> f64 {
        self.lambdas.iter().sum::<f64>() + self.mus.iter().sum::<f64>()
    }

    /// `(λ_p, …, λ_1, μ_1, …, μ_q)`: the diagonal of the canonical form.
    pub fn canonical_vector(&self) -> Vec<f64> {
        self.lambdas
            .iter()
            .rev()
            .chain(self.mus.iter())
            .copied()
            .collect()
    }

    /// Largest absolute eigenvalue deviation; `None` if signatures differ.
    pub fn max_abs_diff(&self, other: &Self) -> Option<f64> {
        if self.signature() != other.signature() {
            return None;
        }
        Some(
            self.canonical_vector()
                .iter()
                .zip(other.canonical_vector())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn shifted(&self, c: f64) -> Self {
        AdmissibleSpectrum {
            lambdas: self.lambdas.iter().map(|x| x + c).collect(),
            mus: self.mus.iter().map(|x| x + c).collect(),
        }
    }
}

/// `Λ = diag(λ_p, …, λ_1, μ_1, …, μ_q)`.
pub fn canonical_diagonal(spec: &AdmissibleSpectrum) -> PseudoHermitianMatrix {
    PseudoHermitianMatrix::from_real_diagonal(spec.signature(), &spec.canonical_vector())
        .expect("canonical vector has length n")
}

/// Strictly increasing 1-based indices in `[1, bound]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple {
    indices: Vec<usize>,
}

impl IndexTuple {
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        let err = |reason| Error::InvalidIndexTuple {
            indices: indices.clone(),
            bound,
            reason,
        };
        if indices.is_empty() {
            return Err(err("empty"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("not strictly increasing"));
        }
        if indices[0] < 1 || *indices.last().unwrap() > bound {
            return Err(err("out of range"));
        }
        Ok(IndexTuple { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.indices.last().unwrap()
    }

    /// All tuples of length `1..=max_m` in `[1, bound]`, shortest first.
    pub fn enumerate(bound: usize, max_m: usize) -> Vec<IndexTuple> {
        (1..=max_m.min(bound))
            .flat_map(|m| {
                (1..=bound)
                    .combinations(m)
                    .map(|indices| IndexTuple { indices })
            })
            .collect()
    }

    /// All tuples of exactly length `m` in `[1, bound]`.
    pub fn enumerate_exact(bound: usize, m: usize) -> Vec<IndexTuple> {
        if m == 0 || m > bound {
            return Vec::new();
        }
        (1..=bound)
            .combinations(m)
            .map(|indices| IndexTuple { indices })
            .collect()
    }
}

impl std::fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.indices.iter().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn metric_examples() {
        assert_eq!(build_metric(sig(1, 1)).diagonal(), vec![1.0, -1.0]);
        assert_eq!(
            build_metric(sig(2, 0)).matrix(),
            ComplexMatrix::identity(2, 2)
        );
        assert_eq!(build_metric(sig(2, 1)).diagonal(), vec![1.0, 1.0, -1.0]);
        assert!(Signature::new(0, 0).is_err());
    }

    #[test]
    fn dagger_examples() {
        let s = sig(1, 1);
        let j = build_metric(s).matrix();
        assert_eq!(matrix_dagger(&j, s).unwrap(), j);

        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        let expected =
            ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(-1., 0.), c(0., 0.)]);
        assert_eq!(matrix_dagger(&m, s).unwrap(), expected);

        let t: f64 = 0.7;
        let u = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(t.cosh(), 0.), c(t.sinh(), 0.), c(t.sinh(), 0.), c(t.cosh(), 0.)],
        );
        let prod = &u * matrix_dagger(&u, s).unwrap();
        assert!(max_abs(&(prod - ComplexMatrix::identity(2, 2))) < 1e-14);

        assert!(matrix_dagger(&ComplexMatrix::zeros(3, 3), s).is_err());
    }

    #[test]
    fn pseudo_hermitian_examples() {
        let s = sig(1, 1);
        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![c(2., 0.), c(-3., 0.)]));
        assert!(validate_pseudo_hermitian(&d, s, TOL_STRUCT).unwrap());

        let (x, y, z) = (0.3, -0.4, 1.2);
        let mink = ComplexMatrix::from_row_slice(2, 2, &[c(z, 0.), c(x, y), c(-x, y), c(-z, 0.)]);
        assert!(validate_pseudo_hermitian(&mink, s, TOL_STRUCT).unwrap());

        let swap = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        assert!(!validate_pseudo_hermitian(&swap, s, TOL_STRUCT).unwrap());
        assert_eq!(pseudo_hermitian_residual(&swap, s).unwrap(), 2.0);
    }

    #[test]
    fn pseudo_unitary_examples() {
        let s = sig(1, 1);
        assert!(validate_pseudo_unitary(&ComplexMatrix::identity(2, 2), s, 1e-12).unwrap());
        for t in [-2.0f64, -0.3, 0.0, 0.9, 3.0] {
            let u = ComplexMatrix::from_row_slice(
                2,
                2,
                &[c(t.cosh(), 0.), c(t.sinh(), 0.), c(t.sinh(), 0.), c(t.cosh(), 0.)],
            );
            assert!(validate_pseudo_unitary(&u, s, 1e-9).unwrap(), "t = {t}");
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let rot = ComplexMatrix::from_row_slice(2, 2, &[c(r, 0.), c(-r, 0.), c(r, 0.), c(r, 0.)]);
        assert!(!validate_pseudo_unitary(&rot, s, 1e-9).unwrap());
    }

    #[test]
    fn canonical_diagonal_examples() {
        let spec = AdmissibleSpectrum::new(vec![1.0, 3.0], vec![0.0]).unwrap();
        assert_eq!(canonical_diagonal(&spec).diagonal(), vec![3.0, 1.0, 0.0]);
        let mink = AdmissibleSpectrum::new(vec![1.0], vec![-1.0]).unwrap();
        assert_eq!(canonical_diagonal(&mink).diagonal(), vec![1.0, -1.0]);
    }

    #[test]
    fn spectrum_validation() {
        assert!(AdmissibleSpectrum::new(vec![3.0, 1.0], vec![0.0]).is_err());
        assert!(AdmissibleSpectrum::new(vec![1.0], vec![0.0, 0.5]).is_err());
        assert!(matches!(
            AdmissibleSpectrum::new(vec![1.0], vec![1.0]),
            Err(Error::GapViolation { other_component: false, .. })
        ));
        assert!(matches!(
            AdmissibleSpectrum::new(vec![0.0], vec![2.0]),
            Err(Error::GapViolation { other_component: true, .. })
        ));
        let s = AdmissibleSpectrum::from_unsorted(vec![3.0, 1.0], vec![-2.0, 0.0]).unwrap();
        assert_eq!(s.lambda(1), 1.0);
        assert_eq!(s.mu(1), 0.0);
        assert_eq!(s.gap(), 1.0);
        assert_eq!(s.canonical_vector(), vec![3.0, 1.0, 0.0, -2.0]);
        // q = 0 is vacuously admissible.
        assert!(AdmissibleSpectrum::new(vec![0.5], vec![]).is_ok());
    }

    #[test]
    fn index_tuples() {
        assert!(IndexTuple::new(vec![1, 3], 3).is_ok());
        assert!(IndexTuple::new(vec![2, 2], 3).is_err());
        assert!(IndexTuple::new(vec![0, 1], 3).is_err());
        assert!(IndexTuple::new(vec![1, 4], 3).is_err());
        assert_eq!(IndexTuple::enumerate(3, 3).len(), 7);
        assert_eq!(IndexTuple::enumerate(4, 2).len(), 4 + 6);
        assert_eq!(IndexTuple::enumerate_exact(4, 2).len(), 6);
    }

    #[test]
    fn symmetrize_is_exact() {
        let s = sig(2, 1);
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 * 0.3 + j as f64, (i * j) as f64 - 0.7));
        let a = PseudoHermitianMatrix::symmetrized(s, &m).unwrap();
        assert_eq!(pseudo_hermitian_residual(a.matrix(), s).unwrap(), 0.0);
        let ja = a.j_times();
        assert!(max_abs(&(&ja - ja.adjoint())) == 0.0);
    }
}
