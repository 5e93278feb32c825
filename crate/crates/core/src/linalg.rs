//! Dense eigenvalues for the small Hermitian matrices that show up here
//! (8×8 density matrices and their partial transposes).

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues of a Hermitian `n×n` matrix stored row-major, ascending.
/// Only the Hermitian part is used.
pub fn hermitian_eigenvalues(matrix: &[Complex64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n, "matrix is not {n}×{n}");
    if n == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_row_slice(n, n, matrix);
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| a.total_cmp(b));
    values
}
