//! Seeded generators for admissible spectra, pseudo-unitaries, admissible
//! matrices with planted spectra, positive-cone subspaces and flags.
//!
//! Pseudo-unitaries are exponentials of Lie-algebra elements
//! `X = [[K₁, B], [B*, K₂]]` with skew-Hermitian `K₁`, `K₂`; the norm of the
//! off-diagonal block `B` (the boost) is capped by `boost_scale`, which
//! bounds `cond(U) ≤ e^{2‖B‖₂}`. The distribution is not Haar-like; it only
//! has to exercise the inequalities.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    pseudo_orthonormalize, subspace_in_positive_cone, ConeClass, Orientation,
    PseudoOrthonormalFrame, SubspaceBasis,
};
use crate::linalg::singular_values;
use crate::model::{
    AdmissibleSpectrum, ComplexMatrix, ComplexVector, IndexTuple, PseudoHermitianMatrix,
    PseudoUnitary, Signature,
};
use crate::spectral::AdmissibleDecomposition;

pub type SampleRng = ChaCha8Rng;

/// Independent stream for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Minimum admissibility margin `λ_1 − μ_1`.
    pub gap_min: f64,
    /// Interval eigenvalues are drawn from, before the gap shift.
    pub value_range: [f64; 2],
    /// Cap on the spectral norm of the boost block.
    pub boost_scale: f64,
    /// Largest accepted `cond(U)`.
    pub cond_cap: f64,
    /// Cap on `‖K‖₂` for graph subspaces `{(u; Ku)}`.
    pub contraction_cap: f64,
    pub max_retries: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            gap_min: 0.5,
            value_range: [-2.0, 2.0],
            boost_scale: 1.0,
            cond_cap: 1e4,
            contraction_cap: 0.9,
            max_retries: 64,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, message: &str| {
            Err(Error::Config {
                field: field.into(),
                message: message.into(),
            })
        };
        if !(self.gap_min > 0.0 && self.gap_min.is_finite()) {
            return bad("gap_min", "must be a finite number > 0");
        }
        let [lo, hi] = self.value_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return bad("value_range", "must be a finite interval [lo, hi] with lo < hi");
        }
        if !(self.boost_scale >= 0.0 && self.boost_scale.is_finite()) {
            return bad("boost_scale", "must be a finite number >= 0");
        }
        if self.cond_cap.is_nan() || self.cond_cap <= 1.0 {
            return bad("cond_cap", "must be > 1");
        }
        if !(0.0..1.0).contains(&self.contraction_cap) {
            return bad("contraction_cap", "must lie in [0, 1)");
        }
        if self.max_retries == 0 {
            return bad("max_retries", "must be >= 1");
        }
        Ok(())
    }
}

pub(crate) fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub(crate) fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Rescales `m` to spectral norm `target` (no-op for empty or zero `m`).
fn with_spectral_norm(m: ComplexMatrix, target: f64) -> ComplexMatrix {
    let norm = singular_values(&m).first().copied().unwrap_or(0.0);
    if norm == 0.0 {
        return m;
    }
    m * Complex64::new(target / norm, 0.0)
}

/// Draws eigenvalues uniformly in `value_range`, sorts them and shifts the
/// λ's up if needed so that `λ_1 − μ_1 ≥ gap_min`.
pub fn sample_spectrum<R: Rng + ?Sized>(
    sig: Signature,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> AdmissibleSpectrum {
    let [lo, hi] = cfg.value_range;
    let mut lambdas: Vec<f64> = (0..sig.p()).map(|_| rng.random_range(lo..hi)).collect();
    let mus: Vec<f64> = (0..sig.q()).map(|_| rng.random_range(lo..hi)).collect();
    let min_l = lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_m = mus.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if sig.p() > 0 && sig.q() > 0 && min_l - max_m < cfg.gap_min {
        let shift = cfg.gap_min - (min_l - max_m);
        // the shifted gap must not round below gap_min
        let shift = shift + shift.abs() * 4.0 * f64::EPSILON + f64::EPSILON * min_l.abs().max(1.0);
        lambdas.iter_mut().for_each(|x| *x += shift);
    }
    AdmissibleSpectrum::from_unsorted(lambdas, mus).expect("gap enforced")
}

/// Lie-algebra element `[[K₁, B], [B*, K₂]]` of `u(p,q)` (up to the factor
/// `i`): `X J + J X* = 0`.
pub fn lie_algebra_element(
    sig: Signature,
    k1: &ComplexMatrix,
    k2: &ComplexMatrix,
    boost: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let (p, q) = (sig.p(), sig.q());
    let shape_ok = k1.shape() == (p, p) && k2.shape() == (q, q) && boost.shape() == (p, q);
    if !shape_ok {
        return Err(Error::DimensionMismatch {
            expected: format!("blocks {p}x{p}, {q}x{q}, {p}x{q}"),
            actual: format!("{:?}, {:?}, {:?}", k1.shape(), k2.shape(), boost.shape()),
        });
    }
    let n = sig.n();
    let mut x = ComplexMatrix::zeros(n, n);
    x.view_mut((0, 0), (p, p)).copy_from(&((k1 - k1.adjoint()) * Complex64::new(0.5, 0.0)));
    x.view_mut((p, p), (q, q)).copy_from(&((k2 - k2.adjoint()) * Complex64::new(0.5, 0.0)));
    x.view_mut((0, p), (p, q)).copy_from(boost);
    x.view_mut((p, 0), (q, p)).copy_from(&boost.adjoint());
    Ok(x)
}

/// `exp(X)` for a Lie-algebra element, validated as pseudo-unitary.
pub fn exp_generator(sig: Signature, generator: &ComplexMatrix) -> Result<PseudoUnitary> {
    sig.check_square(generator)?;
    let u: DMatrix<Complex64> = generator.exp();
    let scale = crate::model::max_abs(&u).max(1.0);
    PseudoUnitary::new(sig, u, 1e-11 * scale * scale)
}

pub fn sample_pseudo_unitary<R: Rng + ?Sized>(
    sig: Signature,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<PseudoUnitary> {
    let (p, q) = (sig.p(), sig.q());
    for _ in 0..cfg.max_retries {
        let k1 = gaussian_matrix(p, p, rng) * Complex64::new(2.0, 0.0);
        let k2 = gaussian_matrix(q, q, rng) * Complex64::new(2.0, 0.0);
        let norm = cfg.boost_scale * rng.random::<f64>();
        let boost = with_spectral_norm(gaussian_matrix(p, q, rng), norm);
        let x = lie_algebra_element(sig, &k1, &k2, &boost)?;
        let u = exp_generator(sig, &x)?;
        if u.condition_number() <= cfg.cond_cap {
            return Ok(u);
        }
    }
    Err(Error::RetriesExhausted {
        what: "sample_pseudo_unitary",
        attempts: cfg.max_retries,
    })
}

/// An admissible matrix `A = U Λ U⁻¹` with its planted spectrum.
#[derive(Clone, Debug)]
pub struct PlantedAdmissible {
    pub matrix: PseudoHermitianMatrix,
    pub spectrum: AdmissibleSpectrum,
    pub conjugator: PseudoUnitary,
}

impl PlantedAdmissible {
    pub fn cond(&self) -> f64 {
        self.conjugator.condition_number()
    }
}

pub fn plant(spectrum: &AdmissibleSpectrum, u: &PseudoUnitary) -> Result<PlantedAdmissible> {
    let lam = crate::model::canonical_diagonal(spectrum);
    Ok(PlantedAdmissible {
        matrix: lam.conjugated(u)?,
        spectrum: spectrum.clone(),
        conjugator: u.clone(),
    })
}

pub fn sample_admissible<R: Rng + ?Sized>(
    sig: Signature,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<PlantedAdmissible> {
    let spectrum = sample_spectrum(sig, cfg, rng);
    let u = sample_pseudo_unitary(sig, cfg, rng)?;
    plant(&spectrum, &u)
}

/// Random `p × k` matrix with orthonormal columns.
fn random_isometry<R: Rng + ?Sized>(p: usize, k: usize, rng: &mut R) -> ComplexMatrix {
    gaussian_matrix(p, k, rng).qr().q()
}

/// The graph subspace spanned by the columns of `(Q; K Q)`.
pub fn graph_subspace(sig: Signature, q_iso: &ComplexMatrix, k: &ComplexMatrix) -> Result<SubspaceBasis> {
    if q_iso.nrows() != sig.p() || k.shape() != (sig.q(), sig.p()) {
        return Err(Error::DimensionMismatch {
            expected: format!("Q with {} rows and K {}x{}", sig.p(), sig.q(), sig.p()),
            actual: format!("Q {:?}, K {:?}", q_iso.shape(), k.shape()),
        });
    }
    let lower = k * q_iso;
    let cols = q_iso.ncols();
    let mut b = ComplexMatrix::zeros(sig.n(), cols);
    b.view_mut((0, 0), (sig.p(), cols)).copy_from(q_iso);
    b.view_mut((sig.p(), 0), (sig.q(), cols)).copy_from(&lower);
    SubspaceBasis::new(b)
}

/// A `k`-dimensional subspace of the positive cone: a graph `(Q; KQ)` with
/// `‖K‖₂ ≤ contraction_cap`, moved by a sampled pseudo-unitary. Its Gram
/// matrix is bounded below by `1 − contraction_cap²`.
pub fn sample_positive_subspace<R: Rng + ?Sized>(
    sig: Signature,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SubspaceBasis> {
    if k == 0 || k > sig.p() {
        return Err(Error::DimensionMismatch {
            expected: format!("1 <= k <= p = {}", sig.p()),
            actual: format!("k = {k}"),
        });
    }
    let q_iso = random_isometry(sig.p(), k, rng);
    let contraction = with_spectral_norm(
        gaussian_matrix(sig.q(), sig.p(), rng),
        cfg.contraction_cap * rng.random::<f64>(),
    );
    let graph = graph_subspace(sig, &q_iso, &contraction)?;
    let u = sample_pseudo_unitary(sig, cfg, rng)?;
    let basis = SubspaceBasis::new(u.matrix() * graph.columns())?;
    debug_assert!(subspace_in_positive_cone(&basis, sig, 0.0).unwrap_or(false));
    Ok(basis)
}

pub fn sample_positive_frame<R: Rng + ?Sized>(
    sig: Signature,
    k: usize,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<PseudoOrthonormalFrame> {
    let basis = sample_positive_subspace(sig, k, cfg, rng)?;
    pseudo_orthonormalize(basis.columns(), sig, Orientation::Positive)
}

/// A vector of the requested cone: `(a; b)` with `‖b‖ = ρ‖a‖` (positive)
/// or `‖a‖ = ρ‖b‖` (negative), `ρ` uniform in `[0, 0.999)`.
pub fn sample_cone_vector<R: Rng + ?Sized>(
    sig: Signature,
    class: ConeClass,
    rng: &mut R,
) -> Result<ComplexVector> {
    let (p, q) = (sig.p(), sig.q());
    let (major, minor) = match class {
        ConeClass::Positive if p > 0 => (p, q),
        ConeClass::Negative if q > 0 => (q, p),
        _ => {
            return Err(Error::DimensionMismatch {
                expected: format!("a {class:?} cone in signature {sig}"),
                actual: "empty cone".into(),
            })
        }
    };
    let a: Vec<Complex64> = (0..major).map(|_| complex_normal(rng)).collect();
    let b: Vec<Complex64> = (0..minor).map(|_| complex_normal(rng)).collect();
    let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let rho = 0.999 * rng.random::<f64>();
    let factor = if nb > 0.0 { rho * na / nb } else { 0.0 };
    let b = b.into_iter().map(|z| z * factor);
    let entries: Vec<Complex64> = match class {
        ConeClass::Positive => a.into_iter().chain(b).collect(),
        _ => b.chain(a).collect(),
    };
    Ok(ComplexVector::from_vec(entries))
}

/// Nested positive subspaces `V_{i_1} ⊂ ⋯ ⊂ V_{i_m}`: level `j` is the span
/// of the first `i_j` columns of `basis`.
#[derive(Clone, Debug)]
pub struct PositiveFlag {
    signature: Signature,
    tuple: IndexTuple,
    basis: SubspaceBasis,
}

impl PositiveFlag {
    pub fn new(sig: Signature, tuple: IndexTuple, basis: SubspaceBasis) -> Result<Self> {
        if basis.ambient_dim() != sig.n() || basis.dim() < tuple.last() {
            return Err(Error::DimensionMismatch {
                expected: format!("basis of dimension >= {} in C^{}", tuple.last(), sig.n()),
                actual: format!("{}x{}", basis.ambient_dim(), basis.dim()),
            });
        }
        let basis = basis.leading(tuple.last());
        if !subspace_in_positive_cone(&basis, sig, 0.0)? {
            return Err(Error::OrientationMismatch {
                index: 0,
                pivot: crate::geometry::positive_cone_margin(&basis, sig)?,
            });
        }
        Ok(PositiveFlag {
            signature: sig,
            tuple,
            basis,
        })
    }

    /// The eigenflag `V_{i_j} = span(v_1, …, v_{i_j})`.
    pub fn eigenflag(decomp: &AdmissibleDecomposition, tuple: IndexTuple) -> Result<Self> {
        let sig = decomp.spectrum.signature();
        Self::new(sig, tuple.clone(), decomp.positive_eigenspace(tuple.last()))
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn tuple(&self) -> &IndexTuple {
        &self.tuple
    }

    /// Spanning columns of the top level `V_{i_m}`, ordered along the flag.
    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    /// Level `j` (0-based), of dimension `i_{j+1}`.
    pub fn level(&self, j: usize) -> SubspaceBasis {
        self.basis.leading(self.tuple.indices()[j])
    }

    pub fn depth(&self) -> usize {
        self.tuple.len()
    }
}

pub fn sample_flag<R: Rng + ?Sized>(
    sig: Signature,
    tuple: &IndexTuple,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<PositiveFlag> {
    if tuple.last() > sig.p() {
        return Err(Error::InvalidIndexTuple {
            indices: tuple.indices().to_vec(),
            bound: sig.p(),
            reason: "flag dimension exceeds p",
        });
    }
    let basis = sample_positive_subspace(sig, tuple.last(), cfg, rng)?;
    PositiveFlag::new(sig, tuple.clone(), basis)
}

/// A frame subordinate to `flag`: `x_j` is a random element of level `j`,
/// orthonormalized in flag order so that membership is preserved.
pub fn sample_subordinate<R: Rng + ?Sized>(
    flag: &PositiveFlag,
    max_retries: usize,
    rng: &mut R,
) -> Result<PseudoOrthonormalFrame> {
    let sig = flag.signature();
    let b = flag.basis().columns();
    for _ in 0..max_retries.max(1) {
        let mut x = ComplexMatrix::zeros(sig.n(), flag.depth());
        for (j, &dim) in flag.tuple().indices().iter().enumerate() {
            let coeffs = gaussian_matrix(dim, 1, rng);
            x.set_column(j, &(b.columns(0, dim) * coeffs).column(0));
        }
        match pseudo_orthonormalize(&x, sig, Orientation::Positive) {
            Ok(frame) => return Ok(frame),
            Err(Error::NullDegeneracy { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted {
        what: "sample_subordinate",
        attempts: max_retries,
    })
}

pub fn sample_flag_with_subordinate<R: Rng + ?Sized>(
    sig: Signature,
    tuple: &IndexTuple,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<(PositiveFlag, PseudoOrthonormalFrame)> {
    let flag = sample_flag(sig, tuple, cfg, rng)?;
    let frame = sample_subordinate(&flag, cfg.max_retries, rng)?;
    Ok((flag, frame))
}

/// Largest residual `‖x_j − P_j x_j‖` where `P_j` projects onto level `j`.
pub fn subordination_residual(flag: &PositiveFlag, frame: &PseudoOrthonormalFrame) -> Result<f64> {
    let sig = flag.signature();
    let mut worst = 0.0f64;
    for j in 0..flag.depth() {
        let level = pseudo_orthonormalize(flag.level(j).columns(), sig, Orientation::Positive)?;
        let p = crate::geometry::projector(&level);
        let x = frame.vector(j);
        worst = worst.max((&p * &x - &x).norm() / x.norm());
    }
    Ok(worst)
}
