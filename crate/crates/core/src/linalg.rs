//! Small dense helpers shared by the numerical modules.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::model::ComplexMatrix;

/// Eigen-decomposition of a Hermitian matrix (Hermitian part of `h`),
/// eigenvalues ascending with matching eigenvector columns.
pub(crate) fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let k = h.nrows();
    if k == 0 {
        return (Vec::new(), ComplexMatrix::zeros(0, 0));
    }
    let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(k, k, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub(crate) fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigen(h).0
}

/// Singular values sorted descending.
pub(crate) fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Right singular vectors for the `r` smallest singular values of a square
/// matrix, with those singular values.
pub(crate) fn smallest_right_singular(m: &ComplexMatrix, r: usize) -> (Vec<f64>, ComplexMatrix) {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let picked = &order[..r];
    let values = picked.iter().map(|&i| svd.singular_values[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, r, |row, c| v_t[(picked[c], row)].conj());
    (values, vectors)
}

/// Euclidean column norms.
pub(crate) fn column_norm(m: &ComplexMatrix, j: usize) -> f64 {
    m.column(j).norm()
}

/// Orthonormal basis (columns) of the orthogonal complement of the column
/// span of `c` inside `C^k`, using the eigenvectors of `c c*` whose
/// eigenvalue falls below `rel_tol · max`.
pub(crate) fn orthogonal_complement(c: &ComplexMatrix, k: usize, rel_tol: f64) -> ComplexMatrix {
    if c.ncols() == 0 {
        return ComplexMatrix::identity(k, k);
    }
    let gram = c * c.adjoint();
    let (values, vectors) = hermitian_eigen(&gram);
    let top = values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..k).filter(|&i| values[i] <= rel_tol * top.max(1e-300)).collect();
    ComplexMatrix::from_fn(k, keep.len(), |r, col| vectors[(r, keep[col])])
}
