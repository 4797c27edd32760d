//! Three-dimensional Minkowski space as traceless pseudo-Hermitian 2×2
//! matrices in signature (1,1): `(x, y, z) ↦ [[z, x+iy], [−x+iy, −z]]`.
//! The eigenvalues are `±√(z² − x² − y²)`, so eigenvalue inequalities for
//! sums specialize to the reversed triangle inequality for timelike vectors.

use num_complex::Complex64;
use rand::Rng;

use crate::checks::{CheckReport, Relation, ReportBuilder};
use crate::error::Result;
use crate::model::{ComplexMatrix, PseudoHermitianMatrix, Signature, TOL_STRUCT};
use crate::spectral::{check_admissible, REALITY_TOL};

pub type MinkowskiVector = [f64; 3];

pub fn minkowski_matrix(v: MinkowskiVector) -> Result<PseudoHermitianMatrix> {
    let [x, y, z] = v;
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(z, 0.0),
            Complex64::new(x, y),
            Complex64::new(-x, y),
            Complex64::new(-z, 0.0),
        ],
    );
    PseudoHermitianMatrix::new(Signature::new(1, 1)?, m, TOL_STRUCT)
}

/// `z² − x² − y²`.
pub fn minkowski_square(v: MinkowskiVector) -> f64 {
    v[2] * v[2] - v[0] * v[0] - v[1] * v[1]
}

/// `√(z² − x² − y²)` for timelike vectors.
pub fn minkowski_norm(v: MinkowskiVector) -> Option<f64> {
    let s = minkowski_square(v);
    (s > 0.0).then(|| s.sqrt())
}

pub fn is_future_timelike(v: MinkowskiVector) -> bool {
    v[2] > 0.0 && minkowski_square(v) > 0.0
}

pub fn add(a: MinkowskiVector, b: MinkowskiVector) -> MinkowskiVector {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Future-timelike vector with norm in `[0.1, 2]` and rapidity in `[0, 2]`.
pub fn sample_future_timelike<R: Rng + ?Sized>(rng: &mut R) -> MinkowskiVector {
    let s = rng.random_range(0.1..=2.0);
    let eta: f64 = rng.random_range(0.0..=2.0);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let r = s * eta.sinh();
    [r * phi.cos(), r * phi.sin(), s * eta.cosh()]
}

/// Eigenvalues of the sum against the closed form, and `|a + b| ≥ |a| + |b|`.
pub fn check_reverse_triangle(a: MinkowskiVector, b: MinkowskiVector, tol: f64) -> Result<CheckReport> {
    let c = add(a, b);
    let sum = minkowski_matrix(a)?.try_add(&minkowski_matrix(b)?)?;
    let spec = check_admissible(&sum, REALITY_TOL)?;
    let mut r = ReportBuilder::new("minkowski", Signature::new(1, 1)?);
    let norm = |v| minkowski_norm(v).unwrap_or(f64::NAN);
    r.hard("lambda closed form", vec![1], spec.lambda(1), Relation::Eq, norm(c), tol);
    r.hard("mu closed form", vec![1], spec.mu(1), Relation::Eq, -norm(c), tol);
    r.hard("reverse triangle", vec![], norm(c), Relation::Ge, norm(a) + norm(b), tol);
    Ok(r.finish())
}
