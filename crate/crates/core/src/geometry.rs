//! The indefinite pairing `⟨z, w⟩ = Σ_{i≤p} z_i w̄_i − Σ_{j>p} z_j w̄_j`,
//! cone classification, pseudo-orthonormal frames and projectors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, singular_values};
use crate::model::{build_metric, max_abs, ComplexMatrix, ComplexVector, Signature};

/// Relative width of the null band: `|⟨z,z⟩| < TOL_NULL · ‖z‖²` is null.
pub const TOL_NULL: f64 = 1e-9;
/// Tolerance on `gram(frame) = ±I`.
pub const TOL_FRAME: f64 = 1e-9;
/// Relative rank threshold for subspace bases.
pub const TOL_RANK: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeClass {
    Positive,
    Negative,
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

fn check_len(sig: Signature, len: usize) -> Result<()> {
    if len != sig.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", sig.n()),
            actual: format!("length {len}"),
        });
    }
    Ok(())
}

/// `⟨z, w⟩ = w† z`.
pub fn pair(z: &ComplexVector, w: &ComplexVector, sig: Signature) -> Result<Complex64> {
    check_len(sig, z.len())?;
    check_len(sig, w.len())?;
    Ok(pair_unchecked(z.as_slice(), w.as_slice(), sig))
}

pub(crate) fn pair_unchecked(z: &[Complex64], w: &[Complex64], sig: Signature) -> Complex64 {
    z.iter()
        .zip(w)
        .enumerate()
        .map(|(i, (a, b))| a * b.conj() * sig.sign(i))
        .sum()
}

/// Real self-pairing `⟨z, z⟩`.
pub(crate) fn self_pairing(z: &[Complex64], sig: Signature) -> f64 {
    z.iter()
        .enumerate()
        .map(|(i, a)| a.norm_sqr() * sig.sign(i))
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedVector {
    pub vector: ComplexVector,
    pub self_pairing: f64,
    pub cone_class: ConeClass,
}

pub(crate) fn cone_class_of(self_pairing: f64, norm_sqr: f64, tol_null: f64) -> ConeClass {
    let band = tol_null * norm_sqr;
    if self_pairing > band {
        ConeClass::Positive
    } else if self_pairing < -band {
        ConeClass::Negative
    } else {
        ConeClass::Null
    }
}

/// Classifies `z` as positive, negative or null against the band
/// `±tol_null · ‖z‖²`.
pub fn classify(z: &ComplexVector, sig: Signature, tol_null: f64) -> Result<ClassifiedVector> {
    check_len(sig, z.len())?;
    let s = self_pairing(z.as_slice(), sig);
    Ok(ClassifiedVector {
        vector: z.clone(),
        self_pairing: s,
        cone_class: cone_class_of(s, z.norm_squared(), tol_null),
    })
}

/// `k` linearly independent columns spanning a subspace of `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    columns: ComplexMatrix,
}

impl SubspaceBasis {
    /// Rejects bases whose smallest singular value is below
    /// `TOL_RANK · σ_max`.
    pub fn new(columns: ComplexMatrix) -> Result<Self> {
        let sv = singular_values(&columns);
        if columns.ncols() == 0 || columns.ncols() > columns.nrows() {
            return Err(Error::RankDeficient { sigma_min: 0.0 });
        }
        let max = sv[0];
        let min = *sv.last().unwrap();
        if min.is_nan() || min <= TOL_RANK * max {
            return Err(Error::RankDeficient { sigma_min: min });
        }
        Ok(SubspaceBasis { columns })
    }

    pub fn columns(&self) -> &ComplexMatrix {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.columns.nrows()
    }

    /// Basis of the span of the first `k` columns.
    pub fn leading(&self, k: usize) -> SubspaceBasis {
        SubspaceBasis {
            columns: self.columns.columns(0, k).into_owned(),
        }
    }
}

/// `G_ij = ⟨b_j, b_i⟩ = (B* J B)_ij` for the columns of `b`.
pub fn gram_of(columns: &ComplexMatrix, sig: Signature) -> Result<ComplexMatrix> {
    sig.check_rows(columns)?;
    Ok(columns.adjoint() * build_metric(sig).apply_left(columns))
}

pub fn gram(basis: &SubspaceBasis, sig: Signature) -> Result<ComplexMatrix> {
    gram_of(basis.columns(), sig)
}

/// `m` vectors with `⟨x_i, x_j⟩ = ±δ_ij`, all of one type.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoOrthonormalFrame {
    signature: Signature,
    vectors: ComplexMatrix,
    orientation: Orientation,
}

impl PseudoOrthonormalFrame {
    /// Accepts `vectors` as a frame if `gram = ±I` within `tol`.
    pub fn new(
        sig: Signature,
        vectors: ComplexMatrix,
        orientation: Orientation,
        tol: f64,
    ) -> Result<Self> {
        let g = gram_of(&vectors, sig)?;
        let target = ComplexMatrix::identity(g.nrows(), g.ncols()) * Complex64::new(orientation.sign(), 0.0);
        let residual = max_abs(&(g - target));
        if residual > tol {
            return Err(Error::OrientationMismatch {
                index: 0,
                pivot: residual,
            });
        }
        Ok(PseudoOrthonormalFrame {
            signature: sig,
            vectors,
            orientation,
        })
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Frame vectors as columns.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> ComplexVector {
        self.vectors.column(j).into_owned()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.ncols() == 0
    }

    /// `max |gram − (±I)|`.
    pub fn defect(&self) -> f64 {
        let g = gram_of(&self.vectors, self.signature).expect("validated rows");
        let target = ComplexMatrix::identity(g.nrows(), g.ncols())
            * Complex64::new(self.orientation.sign(), 0.0);
        max_abs(&(g - target))
    }

    pub fn as_basis(&self) -> SubspaceBasis {
        SubspaceBasis {
            columns: self.vectors.clone(),
        }
    }
}

/// Gram–Schmidt against the indefinite pairing, with a second
/// re-orthogonalization pass. Column `j` of the output lies in the span of
/// the first `j + 1` input columns.
pub fn pseudo_orthonormalize(
    vectors: &ComplexMatrix,
    sig: Signature,
    orientation: Orientation,
) -> Result<PseudoOrthonormalFrame> {
    pseudo_orthonormalize_with(vectors, sig, orientation, TOL_NULL)
}

pub fn pseudo_orthonormalize_with(
    vectors: &ComplexMatrix,
    sig: Signature,
    orientation: Orientation,
    tol_null: f64,
) -> Result<PseudoOrthonormalFrame> {
    sig.check_rows(vectors)?;
    let n = sig.n();
    let sigma = orientation.sign();
    let mut out = ComplexMatrix::zeros(n, vectors.ncols());
    for j in 0..vectors.ncols() {
        let mut r: Vec<Complex64> = vectors.column(j).iter().copied().collect();
        let scale = r.iter().map(|z| z.norm_sqr()).sum::<f64>();
        for _pass in 0..2 {
            for i in 0..j {
                let x: Vec<Complex64> = out.column(i).iter().copied().collect();
                // component along x_i is σ ⟨r, x_i⟩
                let coeff = pair_unchecked(&r, &x, sig) * sigma;
                for (rk, xk) in r.iter_mut().zip(&x) {
                    *rk -= coeff * xk;
                }
            }
        }
        let pivot = self_pairing(&r, sig);
        if pivot.abs() < tol_null * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NullDegeneracy { index: j, pivot });
        }
        if pivot * sigma < 0.0 {
            return Err(Error::OrientationMismatch { index: j, pivot });
        }
        let inv = 1.0 / pivot.abs().sqrt();
        for (k, rk) in r.iter().enumerate() {
            out[(k, j)] = rk * inv;
        }
    }
    Ok(PseudoOrthonormalFrame {
        signature: sig,
        vectors: out,
        orientation,
    })
}

/// `P = σ X X†` with `X† = X* J`, the pairing-orthogonal projector onto
/// the span of the frame (`σ = ±1` its orientation).
pub fn projector(frame: &PseudoOrthonormalFrame) -> ComplexMatrix {
    let x = frame.vectors();
    let xdag = build_metric(frame.signature).apply_right(&x.adjoint());
    x * xdag * Complex64::new(frame.orientation.sign(), 0.0)
}

/// Smallest eigenvalue of `gram(basis)`; positive iff the subspace lies in
/// the positive cone (apart from the origin).
pub fn positive_cone_margin(basis: &SubspaceBasis, sig: Signature) -> Result<f64> {
    let g = gram(basis, sig)?;
    Ok(hermitian_eigenvalues(&g)[0])
}

pub fn subspace_in_positive_cone(basis: &SubspaceBasis, sig: Signature, tol: f64) -> Result<bool> {
    Ok(positive_cone_margin(basis, sig)? >= tol)
}
