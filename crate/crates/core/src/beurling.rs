//! The factorization engine for sequences: generate the right-shift invariant
//! subspace of a column vector in Fock space, extract its wandering vector,
//! read off the isometric column multiplier, and solve for the cyclic factor.
//!
//! Two routes produce the same commutative output. The explicit route
//! materializes Fock vectors and solves the column-multiplier least-squares
//! system directly; it runs whenever the word basis is small enough. The
//! symmetric route never materializes free vectors: the Gram matrix of the
//! shifted generators collapses to weighted correlations of the symbols
//! (shifts of lifted vectors pair through suffix words only), the projection
//! coefficients `b_alpha` give `q(z) = 1 - sum b_alpha z^{lambda(alpha)}`,
//! and then `phi_n = f_n q / gap` and `F = gap q^{-1}` truncated. Pushdown
//! equality of the two routes is enforced by tests.

use crate::error::{Error, Result};
use crate::fock::{FreePoly, FreeVector, Side};
use crate::linalg;
use crate::mult::{self, MultTuple};
use crate::symfock::{evaluate_fock, lift_min_norm, mult_sym, series_inverse, SymVector};
use crate::words::{enumerate_multi_indices, enumerate_words, word_count, MultiIndex, Word};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A tuple of Fock vectors sharing `(d, degree)`; an element of
/// `F^2_d (x) l^2_N` at finite truncation.
#[derive(Clone, PartialEq, Debug)]
pub struct ColumnTuple {
    entries: Vec<FreeVector>,
}

impl ColumnTuple {
    pub fn new(entries: Vec<FreeVector>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroInput("column tuple must have at least one entry"));
        }
        let d = entries[0].d();
        let degree = entries[0].degree();
        for e in &entries {
            if e.d() != d || e.degree() != degree {
                return Err(Error::DimensionMismatch(
                    "column tuple entries must share (d, degree)".into(),
                ));
            }
        }
        Ok(ColumnTuple { entries })
    }

    pub fn entries(&self) -> &[FreeVector] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn d(&self) -> u32 {
        self.entries[0].d()
    }

    pub fn degree(&self) -> u32 {
        self.entries[0].degree()
    }

    pub fn actual_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.actual_degree()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sq()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inner(&self, other: &ColumnTuple) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("column tuples of different length".into()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc += a.inner(b)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: Complex64) -> ColumnTuple {
        ColumnTuple { entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn axpy(&self, c: Complex64, other: &ColumnTuple) -> Result<ColumnTuple> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("column tuples of different length".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.axpy(c, b))
            .collect::<Result<_>>()?;
        Ok(ColumnTuple { entries })
    }

    pub fn sub(&self, other: &ColumnTuple) -> Result<ColumnTuple> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// Entrywise right creation by `word`; returns the shifted tuple and the
    /// total l2-mass dropped past the degree cap.
    pub fn shift_word(&self, word: &Word) -> Result<(ColumnTuple, f64)> {
        let mut entries = Vec::with_capacity(self.len());
        let mut dropped_sq = 0.0;
        for e in &self.entries {
            let (image, lost) = e.apply_word(word, Side::Right)?;
            dropped_sq += lost * lost;
            entries.push(image);
        }
        Ok((ColumnTuple { entries }, dropped_sq.sqrt()))
    }

    /// Coefficients of words of total length at most `cut`, as a tuple.
    pub fn truncated(&self, cut: u32) -> ColumnTuple {
        ColumnTuple { entries: self.entries.iter().map(|e| e.truncated(cut).0).collect() }
    }
}

/// Orthonormal basis data for the depth-`Dm` piece of the invariant subspace
/// generated by a column vector.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    /// Orthonormal basis of `span{(R_alpha (x) I) Ft : |alpha| <= Dm}`.
    pub vectors: Vec<ColumnTuple>,
    /// Orthonormal basis of the shifted-only span, `1 <= |alpha| <= Dm`.
    pub shifted: Vec<ColumnTuple>,
    /// The generator depth `Dm`.
    pub generator_depth: u32,
}

/// Tuning knobs for the factorization pipeline.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Relative singular-value threshold for rank decisions.
    pub rank_tol: f64,
    /// Wandering gap below `gap_tol * ||Ft||` aborts the pipeline.
    pub gap_tol: f64,
    /// Cap on enumerated word bases.
    pub basis_cap: usize,
    /// Largest word basis for which the explicit Fock route runs; larger
    /// instances use the symmetric route.
    pub max_free_basis: usize,
    /// Shift depth for the cyclicity residual.
    pub cyclic_depth: u32,
    /// Relative residual target for the least-squares solve.
    pub cgls_tol: f64,
    pub cgls_max_iter: usize,
    /// Truncation degree for the column-norm diagnostic (`None`: min(D, 10)).
    pub column_norm_degree: Option<u32>,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            rank_tol: 1e-10,
            gap_tol: 1e-12,
            basis_cap: crate::DEFAULT_BASIS_CAP,
            max_free_basis: 2048,
            cyclic_depth: 6,
            cgls_tol: 1e-13,
            cgls_max_iter: 500,
            column_norm_degree: None,
        }
    }
}

/// Orthonormalizes the shift generators `(R_alpha (x) I) Ft`, `|alpha| <= Dm`,
/// by modified Gram-Schmidt in graded word order; vectors whose residual falls
/// below `rank_tol` times the largest generator norm are dropped.
///
/// Requires the ambient degree cap to be at least `deg(Ft) + Dm` so that no
/// generator loses mass to truncation.
pub fn generate_invariant_subspace(
    ft: &ColumnTuple,
    dm: u32,
    config: &FactorConfig,
) -> Result<SubspaceBasis> {
    if ft.is_zero() {
        return Err(Error::ZeroInput("invariant subspace of the zero vector"));
    }
    if dm < 1 {
        return Err(Error::InvalidInput("Dm must be at least 1".into()));
    }
    if ft.degree() < ft.actual_degree() + dm {
        return Err(Error::InvalidInput(format!(
            "ambient degree {} is below input degree {} + Dm {}",
            ft.degree(),
            ft.actual_degree(),
            dm
        )));
    }
    let words = enumerate_words(ft.d(), dm, config.basis_cap)?;
    let mut generators = Vec::with_capacity(words.len());
    let mut max_norm = 0.0f64;
    for word in &words {
        let (shifted, lost) = ft.shift_word(word)?;
        debug_assert!(lost == 0.0, "generator truncated despite degree guard");
        max_norm = max_norm.max(shifted.norm());
        generators.push((word.clone(), shifted));
    }
    let threshold = config.rank_tol * max_norm;
    let frame = DenseFrame::try_build(ft.d(), ft.degree(), config.basis_cap);
    let (vectors, shifted) = if let Some(frame) = &frame {
        let all: Vec<DVector<Complex64>> =
            generators.iter().map(|(_, g)| frame.to_dense(g)).collect();
        let tail: Vec<DVector<Complex64>> = generators
            .iter()
            .filter(|(w, _)| !w.is_empty())
            .map(|(_, g)| frame.to_dense(g))
            .collect();
        (
            orthonormalize_dense(&all, threshold)
                .iter()
                .map(|v| frame.tuple_from_dense(v, ft.len()))
                .collect::<Result<_>>()?,
            orthonormalize_dense(&tail, threshold)
                .iter()
                .map(|v| frame.tuple_from_dense(v, ft.len()))
                .collect::<Result<_>>()?,
        )
    } else {
        (
            orthonormalize(generators.iter().map(|(_, g)| g), threshold)?,
            orthonormalize(
                generators.iter().filter(|(w, _)| !w.is_empty()).map(|(_, g)| g),
                threshold,
            )?,
        )
    };
    Ok(SubspaceBasis { vectors, shifted, generator_depth: dm })
}

/// Word-indexed flat coordinates for tuples over a small basis. The dense
/// representation only pays off while the basis fits comfortably in memory.
struct DenseFrame {
    d: u32,
    degree: u32,
    words: Vec<Word>,
    index: std::collections::HashMap<Word, usize>,
}

/// Largest word basis for which vectors are flattened.
const DENSE_WORD_LIMIT: usize = 4096;

impl DenseFrame {
    fn try_build(d: u32, degree: u32, cap: usize) -> Option<DenseFrame> {
        let count = word_count(d, degree).ok()?;
        if count > DENSE_WORD_LIMIT as u128 || count > cap as u128 {
            return None;
        }
        let words = enumerate_words(d, degree, cap).ok()?;
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Some(DenseFrame { d, degree, words, index })
    }

    fn width(&self) -> usize {
        self.words.len()
    }

    fn to_dense(&self, tuple: &ColumnTuple) -> DVector<Complex64> {
        let w = self.width();
        let mut out = DVector::<Complex64>::zeros(w * tuple.len());
        for (n, entry) in tuple.entries().iter().enumerate() {
            for (word, c) in entry.terms() {
                out[n * w + self.index[word]] = *c;
            }
        }
        out
    }

    fn tuple_from_dense(&self, v: &DVector<Complex64>, entries: usize) -> Result<ColumnTuple> {
        let w = self.width();
        let mut out = Vec::with_capacity(entries);
        for n in 0..entries {
            let terms = (0..w).filter_map(|j| {
                let c = v[n * w + j];
                (c.norm_sqr() != 0.0).then(|| (self.words[j].clone(), c))
            });
            out.push(FreeVector::from_terms(self.d, self.degree, terms)?);
        }
        ColumnTuple::new(out)
    }

    fn vector_from_dense(&self, v: &DVector<Complex64>) -> Result<FreeVector> {
        let terms = (0..self.width()).filter_map(|j| {
            let c = v[j];
            (c.norm_sqr() != 0.0).then(|| (self.words[j].clone(), c))
        });
        FreeVector::from_terms(self.d, self.degree, terms)
    }
}

/// Modified Gram-Schmidt on flat vectors, one re-orthogonalization pass.
fn orthonormalize_dense(
    generators: &[DVector<Complex64>],
    threshold: f64,
) -> Vec<DVector<Complex64>> {
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    for g in generators {
        let mut v = g.clone();
        for _ in 0..2 {
            for e in &basis {
                let overlap = e.dotc(&v);
                v.axpy(-overlap, e, Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        if norm > threshold {
            basis.push(v / Complex64::new(norm, 0.0));
        }
    }
    basis
}

/// Modified Gram-Schmidt on sparse tuples, one re-orthogonalization pass.
fn orthonormalize<'a, I>(generators: I, threshold: f64) -> Result<Vec<ColumnTuple>>
where
    I: Iterator<Item = &'a ColumnTuple>,
{
    let mut basis: Vec<ColumnTuple> = Vec::new();
    for g in generators {
        let mut v = g.clone();
        for _ in 0..2 {
            for e in &basis {
                let overlap = v.inner(e)?;
                v = v.axpy(-overlap, e)?;
            }
        }
        let norm = v.norm();
        if norm > threshold {
            basis.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    Ok(basis)
}

/// Projects `Ft` off the shifted span and normalizes: the truncated wandering
/// vector, with the gap `||Ft - P Ft||`. The truncated wandering space has
/// dimension at most one by construction; a positive gap exhibits it.
pub fn wandering_subspace(
    basis: &SubspaceBasis,
    ft: &ColumnTuple,
    config: &FactorConfig,
) -> Result<(ColumnTuple, f64)> {
    if ft.is_zero() {
        return Err(Error::ZeroInput("wandering vector of the zero tuple"));
    }
    let mut w = ft.clone();
    for _ in 0..2 {
        for e in &basis.shifted {
            let overlap = w.inner(e)?;
            w = w.axpy(-overlap, e)?;
        }
    }
    let gap = w.norm();
    let tol = config.gap_tol * ft.norm();
    if gap <= tol {
        return Err(Error::GapBelowTolerance { gap, tol });
    }
    let mut w = w.scale(Complex64::new(1.0 / gap, 0.0));
    let phase = leading_phase(&w)?;
    w = w.scale(phase);
    Ok((w, gap))
}

/// Unimodular factor that makes the first coefficient (word-major order,
/// graded words, then entry index) real positive.
fn leading_phase(w: &ColumnTuple) -> Result<Complex64> {
    let mut keyed: Vec<(&Word, usize, Complex64)> = Vec::new();
    for (n, entry) in w.entries.iter().enumerate() {
        for (word, c) in entry.terms() {
            keyed.push((word, n, *c));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
    for (_, _, c) in keyed {
        if c.norm() > 1e-13 {
            return Ok(c.conj() / c.norm());
        }
    }
    Err(Error::ZeroInput("phase of the zero vector"))
}

/// Reads the left column-multiplier symbols off a wandering vector:
/// `phi_n = sum_alpha w_n[alpha] L_alpha`.
pub fn extract_column_multiplier(w: &ColumnTuple) -> Result<Vec<FreePoly>> {
    if w.is_zero() {
        return Err(Error::ZeroInput("column multiplier of the zero vector"));
    }
    w.entries
        .iter()
        .map(|entry| {
            FreePoly::from_terms(
                w.d(),
                Side::Left,
                entry.terms().map(|(word, c)| (word.clone(), *c)),
            )
        })
        .collect()
}

/// Output of [`solve_cyclic_factor`].
#[derive(Clone, Debug)]
pub struct CyclicFactor {
    pub vector: FreeVector,
    /// Residual `||M_phi F - Ft||` restricted to total degree <= input degree.
    pub residual: f64,
    /// Residual over all stored degrees.
    pub residual_full: f64,
    pub iterations: usize,
}

/// Solves `M_phi F = Ft` in least squares by conjugate gradients on the
/// normal equations (minimal-norm solution from the zero start). Small word
/// bases run on an indexed flat representation; larger ones fall back to
/// sparse map arithmetic.
pub fn solve_cyclic_factor(
    phi: &[FreePoly],
    ft: &ColumnTuple,
    config: &FactorConfig,
) -> Result<CyclicFactor> {
    if phi.len() != ft.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} symbols against a column of {} entries",
            phi.len(),
            ft.len()
        )));
    }
    if let Some(frame) = DenseFrame::try_build(ft.d(), ft.degree(), config.basis_cap) {
        solve_cyclic_factor_dense(&frame, phi, ft, config)
    } else {
        solve_cyclic_factor_sparse(phi, ft, config)
    }
}

/// Flat CGLS: the column-multiplier matrix is assembled once as triplets.
fn solve_cyclic_factor_dense(
    frame: &DenseFrame,
    phi: &[FreePoly],
    ft: &ColumnTuple,
    config: &FactorConfig,
) -> Result<CyclicFactor> {
    let width = frame.width();
    let rows = width * ft.len();
    // triplets of M_phi: block n maps basis word beta to alpha beta
    let mut triplets: Vec<(u32, u32, Complex64)> = Vec::new();
    for (n, p) in phi.iter().enumerate() {
        for (alpha, c) in p.terms() {
            for (j, beta) in frame.words.iter().enumerate() {
                if alpha.len() + beta.len() > frame.degree as usize {
                    continue;
                }
                let image = match p.side() {
                    Side::Left => alpha.concat(beta),
                    Side::Right => beta.concat(alpha),
                };
                let row = n * width + frame.index[&image];
                triplets.push((row as u32, j as u32, *c));
            }
        }
    }
    let apply = |x: &DVector<Complex64>, out: &mut DVector<Complex64>| {
        out.fill(Complex64::new(0.0, 0.0));
        for &(row, col, c) in &triplets {
            out[row as usize] += c * x[col as usize];
        }
    };
    let apply_adjoint = |y: &DVector<Complex64>, out: &mut DVector<Complex64>| {
        out.fill(Complex64::new(0.0, 0.0));
        for &(row, col, c) in &triplets {
            out[col as usize] += c.conj() * y[row as usize];
        }
    };

    let b = frame.to_dense(ft);
    let b_norm = b.norm();
    let target = config.cgls_tol * b_norm;
    let mut x = DVector::<Complex64>::zeros(width);
    let mut r = b.clone();
    let mut s = DVector::<Complex64>::zeros(width);
    apply_adjoint(&r, &mut s);
    let mut p_dir = s.clone();
    let mut q = DVector::<Complex64>::zeros(rows);
    let mut gamma = s.norm_squared();
    let mut iterations = 0usize;
    while iterations < config.cgls_max_iter {
        if r.norm() <= target || gamma.sqrt() <= config.cgls_tol * b_norm.max(1.0) {
            break;
        }
        apply(&p_dir, &mut q);
        let qn = q.norm_squared();
        if qn == 0.0 {
            break;
        }
        let alpha = Complex64::new(gamma / qn, 0.0);
        x.axpy(alpha, &p_dir, Complex64::new(1.0, 0.0));
        r.axpy(-alpha, &q, Complex64::new(1.0, 0.0));
        apply_adjoint(&r, &mut s);
        let gamma_new = s.norm_squared();
        let beta = Complex64::new(gamma_new / gamma, 0.0);
        gamma = gamma_new;
        p_dir.axpy(Complex64::new(1.0, 0.0), &s, beta);
        iterations += 1;
    }
    let mut image = DVector::<Complex64>::zeros(rows);
    apply(&x, &mut image);
    let exact_r = &b - &image;
    let residual_full = exact_r.norm();
    let interior_cut = ft.actual_degree() as usize;
    let mut interior_sq = 0.0f64;
    for (row, value) in exact_r.iter().enumerate() {
        if frame.words[row % width].len() <= interior_cut {
            interior_sq += value.norm_sqr();
        }
    }
    if residual_full > 1e-6 * b_norm.max(1.0) && iterations >= config.cgls_max_iter {
        return Err(Error::IllConditioned(format!(
            "least-squares solve stalled at relative residual {:e} after {} iterations",
            residual_full / b_norm.max(1e-300),
            iterations
        )));
    }
    Ok(CyclicFactor {
        vector: frame.vector_from_dense(&x)?,
        residual: interior_sq.sqrt(),
        residual_full,
        iterations,
    })
}

/// Matrix-free CGLS over sparse maps, for bases too large to flatten.
fn solve_cyclic_factor_sparse(
    phi: &[FreePoly],
    ft: &ColumnTuple,
    config: &FactorConfig,
) -> Result<CyclicFactor> {
    let d = ft.d();
    let degree = ft.degree();
    let apply = |x: &FreeVector| -> Result<ColumnTuple> {
        let entries = phi.iter().map(|p| Ok(p.apply(x)?.0)).collect::<Result<_>>()?;
        ColumnTuple::new(entries)
    };
    let apply_adjoint = |y: &ColumnTuple| -> Result<FreeVector> {
        let mut acc = FreeVector::zero(d, degree);
        for (p, entry) in phi.iter().zip(y.entries()) {
            acc = acc.add(&p.apply_adjoint(entry)?)?;
        }
        Ok(acc)
    };

    let mut x = FreeVector::zero(d, degree);
    let mut r = ft.clone();
    let mut s = apply_adjoint(&r)?;
    let mut p = s.clone();
    let mut gamma = s.norm_sq();
    let b_norm = ft.norm();
    let target = config.cgls_tol * b_norm;
    let mut iterations = 0usize;
    while iterations < config.cgls_max_iter {
        if r.norm() <= target || gamma.sqrt() <= config.cgls_tol * b_norm.max(1.0) {
            break;
        }
        let q = apply(&p)?;
        let qn = q.norm_sq();
        if qn == 0.0 {
            break;
        }
        let alpha = Complex64::new(gamma / qn, 0.0);
        x = x.axpy(alpha, &p)?;
        r = r.axpy(-alpha, &q)?;
        s = apply_adjoint(&r)?;
        let gamma_new = s.norm_sq();
        let beta = Complex64::new(gamma_new / gamma, 0.0);
        gamma = gamma_new;
        p = s.axpy(beta, &p)?;
        iterations += 1;
    }
    let exact_r = ft.sub(&apply(&x)?)?;
    let residual_full = exact_r.norm();
    let residual = exact_r.truncated(ft.actual_degree()).norm();
    if residual_full > 1e-6 * b_norm.max(1.0) && iterations >= config.cgls_max_iter {
        return Err(Error::IllConditioned(format!(
            "least-squares solve stalled at relative residual {:e} after {} iterations",
            residual_full / b_norm.max(1e-300),
            iterations
        )));
    }
    Ok(CyclicFactor { vector: x, residual, residual_full, iterations })
}

/// Diagnostics attached to a sequence factorization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct T1Diagnostics {
    pub column_norm: f64,
    #[serde(rename = "F_norm_sq")]
    pub f_norm_sq: f64,
    pub input_norm_sq: f64,
    pub max_residual: f64,
    pub wandering_gap: f64,
    pub cyclic_residual: f64,
}

/// A sequence factorization `f_n = phi_n F`: the commutative column symbols,
/// the cyclic factor, and the certificates backing the three guarantees.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationT1 {
    pub phi: Vec<SymVector>,
    #[serde(rename = "F")]
    pub big_f: SymVector,
    pub diagnostics: T1Diagnostics,
}

/// Full pipeline: lift the sequence, extract the wandering vector of depth
/// `dm`, read off the column multiplier, solve for the cyclic factor, and
/// push everything down to commuting variables.
pub fn factor_sequence(fs: &[SymVector], dm: u32, config: &FactorConfig) -> Result<FactorizationT1> {
    if fs.is_empty() {
        return Err(Error::ZeroInput("factor_sequence needs at least one function"));
    }
    let d = fs[0].d();
    for f in fs {
        if f.d() != d {
            return Err(Error::DimensionMismatch("sequence mixes alphabet sizes".into()));
        }
    }
    if fs.iter().all(|f| f.is_zero()) {
        return Err(Error::ZeroInput("factor_sequence of the zero sequence"));
    }
    if dm < 1 {
        return Err(Error::InvalidInput("Dm must be at least 1".into()));
    }
    let d_in = fs.iter().map(|f| f.actual_degree()).max().unwrap_or(0);
    let d_amb = d_in + dm;

    let free_size = word_count(d, d_amb)?;
    let (phi_sym, f_sym, gap) = if free_size <= config.max_free_basis as u128 {
        factor_free_route(fs, dm, d_amb, config)?
    } else {
        factor_symmetric_route(fs, dm, d_amb, config)?
    };

    let input_norm_sq: f64 = fs.iter().map(|f| f.da_norm_sq()).sum();
    let col_degree = config.column_norm_degree.unwrap_or_else(|| d_amb.min(10));
    let column_norm = mult::column_norm(&MultTuple::new(phi_sym.clone())?, col_degree)?;
    let mut max_residual = 0.0f64;
    for (f, phi) in fs.iter().zip(&phi_sym) {
        let product = mult_sym(phi, &f_sym, d_in)?;
        let residual = product.sub(&f.truncated(d_in))?.da_norm();
        max_residual = max_residual.max(residual);
    }
    let cyclic_residual = check_cyclic(&f_sym, config.cyclic_depth)?;
    Ok(FactorizationT1 {
        phi: phi_sym,
        diagnostics: T1Diagnostics {
            column_norm,
            f_norm_sq: f_sym.da_norm_sq(),
            input_norm_sq,
            max_residual,
            wandering_gap: gap,
            cyclic_residual,
        },
        big_f: f_sym,
    })
}

/// Explicit route: materialize lifts and solve the free least-squares system.
fn factor_free_route(
    fs: &[SymVector],
    dm: u32,
    d_amb: u32,
    config: &FactorConfig,
) -> Result<(Vec<SymVector>, SymVector, f64)> {
    let lifts: Vec<FreeVector> = fs
        .iter()
        .map(|f| lift_min_norm(&f.with_degree(d_amb)?, config.basis_cap))
        .collect::<Result<_>>()?;
    let ft = ColumnTuple::new(lifts)?;
    let basis = generate_invariant_subspace(&ft, dm, config)?;
    let (w, gap) = wandering_subspace(&basis, &ft, config)?;
    let phi_free = extract_column_multiplier(&w)?;
    let cyclic = solve_cyclic_factor(&phi_free, &ft, config)?;
    let phi_sym = phi_free
        .iter()
        .map(|p| Ok(evaluate_fock(&p.to_vector(d_amb)?)))
        .collect::<Result<Vec<_>>>()?;
    let f_sym = evaluate_fock(&cyclic.vector);
    Ok((phi_sym, f_sym, gap))
}

/// Symmetric route: same projection, carried out on the symbols.
fn factor_symmetric_route(
    fs: &[SymVector],
    dm: u32,
    d_amb: u32,
    config: &FactorConfig,
) -> Result<(Vec<SymVector>, SymVector, f64)> {
    let d = fs[0].d();
    let shift_words: Vec<Word> = enumerate_words(d, dm, config.basis_cap)?
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();

    // pair correlations tau(p) = sum_n sum_m w(m+p) f_n[m+p] conj(f_n[m]);
    // the Gram of shifted lifts only sees these through suffix words
    let mut tau: std::collections::BTreeMap<MultiIndex, Complex64> = std::collections::BTreeMap::new();
    for f in fs {
        for (m_hi, c_hi) in f.terms() {
            let w_hi = m_hi.weight()?;
            for (m_lo, c_lo) in f.terms() {
                if let Some(p) = m_hi.checked_sub(m_lo) {
                    if p.total() >= 1 && p.total() <= dm {
                        let entry = tau.entry(p).or_insert(Complex64::new(0.0, 0.0));
                        *entry += c_hi * c_lo.conj() * w_hi;
                    }
                }
            }
        }
    }
    let tau_at = |p: &MultiIndex| -> Complex64 {
        tau.get(p).copied().unwrap_or(Complex64::new(0.0, 0.0))
    };
    let ft_norm_sq: f64 = fs.iter().map(|f| f.da_norm_sq()).sum();

    let k = shift_words.len();
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    let mut rhs = DVector::<Complex64>::zeros(k);
    for (i, alpha) in shift_words.iter().enumerate() {
        rhs[i] = tau_at(&alpha.letter_count(d)?);
        for (j, beta) in shift_words.iter().enumerate() {
            let entry = if alpha == beta {
                Complex64::new(ft_norm_sq, 0.0)
            } else if let Some(delta) = beta.strip_suffix(alpha) {
                // beta = delta alpha, so g_beta pairs with g_alpha through delta
                tau_at(&delta.letter_count(d)?).conj()
            } else if let Some(delta) = alpha.strip_suffix(beta) {
                tau_at(&delta.letter_count(d)?)
            } else {
                Complex64::new(0.0, 0.0)
            };
            gram[(i, j)] = entry;
        }
    }
    let solve = linalg::hermitian_pinv_solve(&gram, &rhs, config.rank_tol);
    let b = solve.solution;
    let projected: Complex64 = b.iter().zip(rhs.iter()).map(|(bi, ri)| bi.conj() * ri).sum();
    let gap_sq = (ft_norm_sq - projected.re).max(0.0);
    let gap = gap_sq.sqrt();
    let tol = config.gap_tol * ft_norm_sq.sqrt();
    if gap <= tol {
        return Err(Error::GapBelowTolerance { gap, tol });
    }

    // q(z) = 1 - sum_alpha b_alpha z^{lambda(alpha)}
    let mut q = SymVector::one(d, dm);
    for (alpha, b_alpha) in shift_words.iter().zip(b.iter()) {
        let fiber = alpha.letter_count(d)?;
        q = q.sub(&SymVector::monomial(d, dm, fiber, *b_alpha)?)?;
    }

    let phase = symmetric_leading_phase(fs, &shift_words, &b, gap, d_amb)?;
    let inv_gap = Complex64::new(1.0 / gap, 0.0);
    let phi_sym: Vec<SymVector> = fs
        .iter()
        .map(|f| Ok(mult_sym(f, &q, d_amb)?.scale(phase * inv_gap)))
        .collect::<Result<_>>()?;
    let f_sym = series_inverse(&q, d_amb)?.scale(Complex64::new(gap, 0.0) * phase.conj());
    Ok((phi_sym, f_sym, gap))
}

/// First nonzero coefficient of the (never materialized) wandering vector in
/// word-major order, evaluated lazily degree by degree.
fn symmetric_leading_phase(
    fs: &[SymVector],
    shift_words: &[Word],
    b: &DVector<Complex64>,
    gap: f64,
    d_amb: u32,
) -> Result<Complex64> {
    let d = fs[0].d();
    // lifted coefficient of f at word y is f[lambda(y)] * weight(lambda(y))
    let lifted_coeff = |f: &SymVector, y: &Word| -> Result<Complex64> {
        let n = y.letter_count(d)?;
        Ok(f.coeff(&n) * n.weight()?)
    };
    let mut level: Vec<Word> = vec![Word::empty()];
    for _ in 0..=d_amb {
        for y in &level {
            for f in fs {
                let mut c = lifted_coeff(f, y)?;
                for (alpha, b_alpha) in shift_words.iter().zip(b.iter()) {
                    if let Some(x) = y.strip_suffix(alpha) {
                        c -= b_alpha * lifted_coeff(f, &x)?;
                    }
                }
                if c.norm() / gap > 1e-13 {
                    let unit = c / c.norm();
                    return Ok(unit.conj());
                }
            }
        }
        let mut next = Vec::with_capacity(level.len() * d as usize);
        for w in &level {
            for l in 1..=d {
                next.push(w.append(l));
            }
        }
        level = next;
    }
    Err(Error::ZeroInput("phase of the zero wandering vector"))
}

/// Least-squares distance from the constant `1` to
/// `span{z^n F : |n| <= depth}`. Zero certifies cyclicity at this depth;
/// large values are necessary-but-not-sufficient evidence against.
pub fn check_cyclic(f: &SymVector, depth: u32) -> Result<f64> {
    if f.is_zero() {
        return Ok(1.0);
    }
    let d = f.d();
    let dout = depth + f.actual_degree();
    let shifts = enumerate_multi_indices(d, depth);
    let products: Vec<SymVector> = shifts
        .iter()
        .map(|n| {
            let monomial = SymVector::monomial(d, dout, n.clone(), Complex64::new(1.0, 0.0))?;
            mult_sym(&monomial, f, dout)
        })
        .collect::<Result<_>>()?;
    let k = products.len();
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    let mut rhs = DVector::<Complex64>::zeros(k);
    let one = SymVector::one(d, dout);
    for i in 0..k {
        rhs[i] = one.da_inner(&products[i])?;
        for j in 0..k {
            gram[(i, j)] = products[j].da_inner(&products[i])?;
        }
    }
    let solve = linalg::hermitian_pinv_solve(&gram, &rhs, 1e-12);
    // materialize the residual vector; the Gram identity
    // ||r||^2 = 1 - b^H rhs cancels catastrophically near zero
    let mut residual = one;
    for (b, product) in solve.solution.iter().zip(&products) {
        residual = residual.sub(&product.scale(*b))?;
    }
    Ok(residual.da_norm())
}
