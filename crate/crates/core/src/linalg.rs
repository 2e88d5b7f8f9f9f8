//! Internal dense linear algebra helpers: Hermitian eigensolves, pseudoinverse
//! solves with a relative spectral cutoff, and largest singular values via the
//! normal matrix. Deterministic for fixed inputs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Solution of a Hermitian PSD system through the spectral pseudoinverse.
pub struct PinvSolve {
    pub solution: DVector<Complex64>,
    pub rank: usize,
    /// Ratio of the largest retained eigenvalue to the smallest retained one.
    pub condition: f64,
}

/// Solves `G x = rhs` for Hermitian positive semidefinite `G`, discarding the
/// eigenspace below `rel_tol * lambda_max`.
pub fn hermitian_pinv_solve(
    g: &DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    rel_tol: f64,
) -> PinvSolve {
    let eig = g.clone().symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = rel_tol * lambda_max;
    let mut rank = 0usize;
    let mut lambda_min_kept = f64::INFINITY;
    // x = V diag(1/lambda on retained) V^H rhs
    let vh_rhs = eig.eigenvectors.adjoint() * rhs;
    let mut scaled = vh_rhs.clone();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > cutoff && lambda > 0.0 {
            scaled[i] /= Complex64::new(lambda, 0.0);
            rank += 1;
            lambda_min_kept = lambda_min_kept.min(lambda);
        } else {
            scaled[i] = Complex64::new(0.0, 0.0);
        }
    }
    let solution = &eig.eigenvectors * scaled;
    let condition = if rank == 0 { f64::INFINITY } else { lambda_max / lambda_min_kept };
    PinvSolve { solution, rank, condition }
}

/// Extreme eigenvalues (min, max) of a Hermitian matrix.
pub fn hermitian_eig_range(h: &DMatrix<Complex64>) -> (f64, f64) {
    if h.nrows() == 0 {
        return (0.0, 0.0);
    }
    let eig = h.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinv_solves_full_rank() {
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        );
        let rhs = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let out = hermitian_pinv_solve(&g, &rhs, 1e-12);
        assert_eq!(out.rank, 2);
        let back = &g * &out.solution;
        assert!((back - rhs).norm() < 1e-12);
    }

    #[test]
    fn pinv_handles_rank_deficiency() {
        // rank-1 projector scaled by 2
        let g = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        let rhs = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let out = hermitian_pinv_solve(&g, &rhs, 1e-12);
        assert_eq!(out.rank, 1);
        let back = &g * &out.solution;
        assert!((back - rhs).norm() < 1e-12);
    }

}
