//! Multiplier certificates on the truncated Drury-Arveson space: matrices of
//! multiplication operators in the orthonormalized monomial basis, column and
//! row operator norms, their ratio, and the Pick-matrix positivity test.
//!
//! Truncated norms are lower bounds for the true multiplier norms and are
//! nondecreasing in the truncation degree; no extrapolation to infinite
//! degree is attempted.

use crate::error::{Error, Result};
use crate::linalg;
use crate::symfock::SymVector;
use crate::words::{enumerate_multi_indices, MultiIndex};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite tuple of multiplier symbols sharing an alphabet size.
#[derive(Clone, Debug)]
pub struct MultTuple {
    symbols: Vec<SymVector>,
}

impl MultTuple {
    pub fn new(symbols: Vec<SymVector>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::ZeroInput("multiplier tuple must be nonempty"));
        }
        let d = symbols[0].d();
        for s in &symbols {
            if s.d() != d {
                return Err(Error::DimensionMismatch(
                    "multiplier tuple mixes alphabet sizes".into(),
                ));
            }
        }
        Ok(MultTuple { symbols })
    }

    pub fn symbols(&self) -> &[SymVector] {
        &self.symbols
    }

    pub fn d(&self) -> u32 {
        self.symbols[0].d()
    }

    pub fn max_degree(&self) -> u32 {
        self.symbols.iter().map(|s| s.actual_degree()).max().unwrap_or(0)
    }
}

/// Matrix of `f -> phi f` from `H^2_{<=D}` to `H^2_{<=D+deg phi}` in the
/// orthonormalized monomial bases (monomials scaled by `sqrt(|n|!/n!)`).
pub fn mult_matrix(phi: &SymVector, degree: u32) -> Result<DMatrix<Complex64>> {
    padded_mult_matrix(phi, degree, 0)
}

/// Like [`mult_matrix`] with the range extended by `pad` extra degrees so
/// that blocks of different symbol degrees can share a range basis.
fn padded_mult_matrix(phi: &SymVector, degree: u32, pad: u32) -> Result<DMatrix<Complex64>> {
    let d = phi.d();
    let out_degree = degree + phi.actual_degree() + pad;
    let domain = enumerate_multi_indices(d, degree);
    let range = enumerate_multi_indices(d, out_degree);
    let index: BTreeMap<&MultiIndex, usize> =
        range.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut m = DMatrix::<Complex64>::zeros(range.len(), domain.len());
    for (j, n) in domain.iter().enumerate() {
        let wn = n.weight()?;
        for (p, c) in phi.terms() {
            let target = n.add(p);
            let wm = target.weight()?;
            if let Some(&i) = index.get(&target) {
                // orthonormalized entry: phi_p * ||z^{n+p}|| / ||z^n||
                m[(i, j)] = c * Complex64::new((wm / wn).sqrt(), 0.0);
            }
        }
    }
    Ok(m)
}

/// Largest singular value of the stacked `[M_{phi_1}; M_{phi_2}; ...]` at
/// truncation `degree`; a lower bound for the column multiplier norm.
pub fn column_norm(tuple: &MultTuple, degree: u32) -> Result<f64> {
    let mats: Vec<DMatrix<Complex64>> = tuple
        .symbols
        .iter()
        .map(|s| mult_matrix(s, degree))
        .collect::<Result<_>>()?;
    let cols = mats[0].ncols();
    let mut normal = DMatrix::<Complex64>::zeros(cols, cols);
    for a in &mats {
        normal += a.adjoint() * a;
    }
    let (_, max) = linalg::hermitian_eig_range(&normal);
    Ok(max.max(0.0).sqrt())
}

/// Largest singular value of the concatenated row `[M_{phi_1}, ...]` at
/// truncation `degree`; a lower bound for the row multiplier norm.
pub fn row_norm(tuple: &MultTuple, degree: u32) -> Result<f64> {
    // pad every block into H_{<= degree + max_deg} so the rows line up
    let out_degree = tuple.max_degree();
    let mats: Vec<DMatrix<Complex64>> = tuple
        .symbols
        .iter()
        .map(|s| padded_mult_matrix(s, degree, out_degree - s.actual_degree()))
        .collect::<Result<_>>()?;
    let rows = mats[0].nrows();
    let mut normal = DMatrix::<Complex64>::zeros(rows, rows);
    for a in &mats {
        normal += a * a.adjoint();
    }
    let (_, max) = linalg::hermitian_eig_range(&normal);
    Ok(max.max(0.0).sqrt())
}

/// Column-row report at a matched truncation degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColRowReport {
    pub column_norm: f64,
    pub row_norm: f64,
    pub ratio: f64,
    #[serde(rename = "D")]
    pub degree: u32,
}

/// `row_norm / column_norm` at truncation `degree`. Errors on a zero column.
pub fn column_row_ratio(tuple: &MultTuple, degree: u32) -> Result<ColRowReport> {
    let column = column_norm(tuple, degree)?;
    if column == 0.0 {
        return Err(Error::ZeroInput("column norm vanishes"));
    }
    let row = row_norm(tuple, degree)?;
    Ok(ColRowReport { column_norm: column, row_norm: row, ratio: row / column, degree })
}

/// Result of the Pick positivity test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PickReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// Tests positive semidefiniteness of
/// `[(bound^2 - phi(x_i) conj(phi(x_j))) k(x_i, x_j)]` over the given points
/// of the open ball; an independent finite-point certificate for
/// `||phi||_Mult <= bound`.
pub fn pick_test(phi: &SymVector, points: &[Vec<Complex64>], bound: f64) -> Result<PickReport> {
    if points.is_empty() {
        return Err(Error::ZeroInput("pick test needs at least one point"));
    }
    if bound <= 0.0 {
        return Err(Error::InvalidInput("pick bound must be positive".into()));
    }
    for z in points {
        let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq >= 1.0 {
            return Err(Error::PointOutsideBall { norm: norm_sq.sqrt() });
        }
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let sep: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if sep < 1e-6 {
                return Err(Error::CoincidentPoints { sep });
            }
        }
    }
    let m = points.len();
    let values: Vec<Complex64> = points
        .iter()
        .map(|z| phi.point_eval(z))
        .collect::<Result<_>>()?;
    let mut matrix = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let ip: Complex64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| a * b.conj())
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ip;
            if denom.norm() < 1e-12 {
                return Err(Error::IllConditioned(
                    "kernel evaluation too close to the boundary".into(),
                ));
            }
            let kernel = Complex64::new(1.0, 0.0) / denom;
            matrix[(i, j)] =
                (Complex64::new(bound * bound, 0.0) - values[i] * values[j].conj()) * kernel;
        }
    }
    let (min, max) = linalg::hermitian_eig_range(&matrix);
    let tol = 1e-10 * max.abs().max(1.0);
    Ok(PickReport { psd: min >= -tol, min_eigenvalue: min })
}
