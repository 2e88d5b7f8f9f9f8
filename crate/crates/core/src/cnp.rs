//! Complete Nevanlinna-Pick spaces sampled through an embedding `u` of
//! finitely many points into the unit ball: kernel Gram matrices, the
//! restriction of Drury-Arveson functions to the sample, canonical
//! minimal-norm extensions, and factorization of sampled sequences.
//!
//! The span of kernel functions at the sample points is the computable model
//! of the abstract space; sampling adequacy is the caller's responsibility
//! and every report keeps the sample it was computed on.

use crate::beurling::{factor_sequence, FactorConfig, T1Diagnostics};
use crate::error::{Error, Result};
use crate::linalg;
use crate::symfock::SymVector;
use crate::words::enumerate_multi_indices;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Minimal pairwise separation accepted between embedded points.
const POINT_SEPARATION: f64 = 1e-6;

/// A labelled point of the unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct CnpPoint {
    pub label: String,
    pub u: Vec<Complex64>,
}

/// A CNP space presented by embedded sample points `u(x_j)` in the open ball.
#[derive(Clone, Debug, PartialEq)]
pub struct CnpSpace {
    d: u32,
    points: Vec<CnpPoint>,
}

impl CnpSpace {
    pub fn new(d: u32, points: Vec<CnpPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroInput("CNP space needs at least one point"));
        }
        for p in &points {
            if p.u.len() != d as usize {
                return Err(Error::DimensionMismatch(format!(
                    "point {} has {} coordinates, expected {}",
                    p.label,
                    p.u.len(),
                    d
                )));
            }
            let norm_sq: f64 = p.u.iter().map(|c| c.norm_sqr()).sum();
            if norm_sq >= 1.0 {
                return Err(Error::PointOutsideBall { norm: norm_sq.sqrt() });
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let sep: f64 = points[i]
                    .u
                    .iter()
                    .zip(&points[j].u)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                if sep < POINT_SEPARATION {
                    return Err(Error::CoincidentPoints { sep });
                }
            }
        }
        Ok(CnpSpace { d, points })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn points(&self) -> &[CnpPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest embedded norm over the sample.
    pub fn radius(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }
}

/// The kernel Gram matrix `G_ij = 1 / (1 - <u(x_i), u(x_j)>)`. Hermitian PSD
/// with unit-or-larger diagonal.
pub fn kernel_matrix(space: &CnpSpace) -> DMatrix<Complex64> {
    let m = space.len();
    let mut g = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let ip: Complex64 = space.points[i]
                .u
                .iter()
                .zip(&space.points[j].u)
                .map(|(a, b)| a * b.conj())
                .sum();
            g[(i, j)] = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - ip);
        }
    }
    g
}

/// Smallest and largest eigenvalue of the kernel Gram matrix.
pub fn kernel_eig_range(space: &CnpSpace) -> (f64, f64) {
    linalg::hermitian_eig_range(&kernel_matrix(space))
}

/// An element of the sampled space, stored as kernel coefficients `c_j` of
/// `sum_j c_j k(., x_j)`.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    space: CnpSpace,
    coeffs: Vec<Complex64>,
    /// Spectral condition number of the Gram solve that produced the
    /// coefficients (1 for directly constructed coefficient data).
    pub gram_condition: f64,
}

impl SampledFunction {
    pub fn from_coeffs(space: CnpSpace, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != space.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} points",
                coeffs.len(),
                space.len()
            )));
        }
        Ok(SampledFunction { space, coeffs, gram_condition: 1.0 })
    }

    pub fn space(&self) -> &CnpSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Values at the sample points, `v = G c`.
    pub fn values(&self) -> Vec<Complex64> {
        let g = kernel_matrix(&self.space);
        let c = DVector::from_vec(self.coeffs.clone());
        (g * c).iter().copied().collect()
    }

    /// The sampled-space norm, `||s||^2 = c^H G c`.
    pub fn norm_sq(&self) -> f64 {
        let g = kernel_matrix(&self.space);
        let c = DVector::from_vec(self.coeffs.clone());
        let gc = g * &c;
        let value: Complex64 = c.iter().zip(gc.iter()).map(|(a, b)| a.conj() * b).sum();
        value.re.max(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }
}

/// Restricts a polynomial to the sample: evaluates it at the embedded points
/// and solves `G c = v` for the least-norm kernel coefficients. Contractive:
/// the sampled norm never exceeds the Drury-Arveson norm.
pub fn restrict(h: &SymVector, space: &CnpSpace) -> Result<SampledFunction> {
    if h.d() != space.d() {
        return Err(Error::DimensionMismatch(format!(
            "restricting a {}-variable polynomial to a {}-variable sample",
            h.d(),
            space.d()
        )));
    }
    let values: Vec<Complex64> = space
        .points
        .iter()
        .map(|p| h.point_eval(&p.u))
        .collect::<Result<_>>()?;
    let g = kernel_matrix(space);
    let rhs = DVector::from_vec(values);
    let solve = linalg::hermitian_pinv_solve(&g, &rhs, 1e-12);
    if solve.rank == 0 {
        return Err(Error::IllConditioned("kernel Gram has no positive spectrum".into()));
    }
    if !solve.condition.is_finite() || solve.condition > 1e14 {
        return Err(Error::IllConditioned(format!(
            "kernel Gram condition {:e} beyond the cap",
            solve.condition
        )));
    }
    Ok(SampledFunction {
        space: space.clone(),
        coeffs: solve.solution.iter().copied().collect(),
        gram_condition: solve.condition,
    })
}

/// A truncated minimal-norm extension together with its truncation bound.
#[derive(Clone, Debug)]
pub struct Extension {
    pub h: SymVector,
    /// Upper bound on `|| full extension - h ||` from the dropped kernel
    /// tails; grows as the sample approaches the boundary.
    pub truncation_bound: f64,
}

/// The degree-`degree` truncation of the canonical minimal-norm extension
/// `sum_j c_j k(., u(x_j))`, with coefficient `multinomial(n) conj(u)^n` per
/// monomial. Restricting back reproduces the sampled values up to the
/// reported truncation bound.
pub fn extend_min_norm(s: &SampledFunction, degree: u32) -> Result<Extension> {
    let space = &s.space;
    let d = space.d();
    let mut h = SymVector::zero(d, degree);
    for n in enumerate_multi_indices(d, degree) {
        let mult = n.multinomial()? as f64;
        let mut coeff = Complex64::new(0.0, 0.0);
        for (p, c) in space.points.iter().zip(&s.coeffs) {
            let mut ubar_n = Complex64::new(1.0, 0.0);
            for (ui, &e) in p.u.iter().zip(n.exponents()) {
                ubar_n *= ui.conj().powu(e);
            }
            coeff += c * ubar_n;
        }
        coeff *= mult;
        if coeff.norm_sqr() != 0.0 {
            h = h.add(&SymVector::monomial(d, degree, n, coeff)?)?;
        }
    }
    // || tail of k(., u) ||^2 = rho^{2(D+1)} / (1 - rho^2) with rho = ||u||
    let mut truncation_bound = 0.0f64;
    for (p, c) in space.points.iter().zip(&s.coeffs) {
        let rho_sq: f64 = p.u.iter().map(|v| v.norm_sqr()).sum();
        let tail = (rho_sq.powi(degree as i32 + 1) / (1.0 - rho_sq)).sqrt();
        truncation_bound += c.norm() * tail;
    }
    Ok(Extension { h, truncation_bound })
}

/// Pointwise factorization of a sampled sequence: extend, factor the
/// extensions, restrict the multipliers and the cyclic factor back.
///
/// The cyclicity residual in `diagnostics` refers to the ambient extension;
/// cyclicity in the sampled space itself is not certifiable from finitely
/// many points and no such claim is made.
#[derive(Clone, Debug)]
pub struct CnpFactorization {
    pub phi: Vec<SampledFunction>,
    pub big_f: SampledFunction,
    pub diagnostics: T1Diagnostics,
    /// Largest deviation `|f_n(x_j) - phi_n(x_j) F(x_j)|` over all samples.
    pub max_pointwise_error: f64,
    /// Truncation bounds of the extensions that entered the pipeline.
    pub extension_bounds: Vec<f64>,
}

/// Extends each sampled function to degree `ext_degree`, runs the sequence
/// factorization at depth `dm`, restricts `phi_n` and `F` back to the sample,
/// and verifies the pointwise identity `f_n(x_j) = phi_n(x_j) F(x_j)` against
/// the exact sampled values.
pub fn factor_sequence_cnp(
    space: &CnpSpace,
    fs: &[SampledFunction],
    dm: u32,
    ext_degree: u32,
    config: &FactorConfig,
) -> Result<CnpFactorization> {
    if fs.is_empty() {
        return Err(Error::ZeroInput("factor_sequence_cnp needs at least one function"));
    }
    for s in fs {
        if s.space() != space {
            return Err(Error::DimensionMismatch(
                "sampled functions must share the space they are factored over".into(),
            ));
        }
    }
    let mut extensions = Vec::with_capacity(fs.len());
    let mut extension_bounds = Vec::with_capacity(fs.len());
    for s in fs {
        let ext = extend_min_norm(s, ext_degree)?;
        extension_bounds.push(ext.truncation_bound);
        extensions.push(ext.h);
    }
    let t1 = factor_sequence(&extensions, dm, config)?;

    let phi: Vec<SampledFunction> =
        t1.phi.iter().map(|p| restrict(p, space)).collect::<Result<_>>()?;
    let big_f = restrict(&t1.big_f, space)?;

    let f_values: Vec<Complex64> = space
        .points
        .iter()
        .map(|p| t1.big_f.point_eval(&p.u))
        .collect::<Result<_>>()?;
    let mut max_pointwise_error = 0.0f64;
    for (s, phi_sym) in fs.iter().zip(&t1.phi) {
        let exact = s.values();
        for (j, p) in space.points.iter().enumerate() {
            let predicted = phi_sym.point_eval(&p.u)? * f_values[j];
            max_pointwise_error = max_pointwise_error.max((exact[j] - predicted).norm());
        }
    }
    Ok(CnpFactorization {
        phi,
        big_f,
        diagnostics: t1.diagnostics,
        max_pointwise_error,
        extension_bounds,
    })
}

// --- serde: {"d": 2, "points": [{"label": "p0", "u": [[0.1, 0.0], [0.2, 0.0]]}]}

#[derive(Serialize, Deserialize)]
struct CnpPointDto {
    label: String,
    u: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CnpSpaceDto {
    d: u32,
    points: Vec<CnpPointDto>,
}

impl Serialize for CnpSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = CnpSpaceDto {
            d: self.d,
            points: self
                .points
                .iter()
                .map(|p| CnpPointDto {
                    label: p.label.clone(),
                    u: p.u.iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CnpSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = CnpSpaceDto::deserialize(deserializer)?;
        let points = dto
            .points
            .into_iter()
            .map(|p| CnpPoint {
                label: p.label,
                u: p.u.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            })
            .collect();
        CnpSpace::new(dto.d, points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::MultiIndex;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn origin_space(d: u32) -> CnpSpace {
        CnpSpace::new(
            d,
            vec![CnpPoint { label: "origin".into(), u: vec![c(0.0); d as usize] }],
        )
        .unwrap()
    }

    #[test]
    fn kernel_matrix_examples() {
        let space = origin_space(1);
        let g = kernel_matrix(&space);
        assert_eq!(g.nrows(), 1);
        assert!((g[(0, 0)] - c(1.0)).norm() < 1e-15);

        // u = {0, v} with <v,v> = 1/2: G = [[1,1],[1,2]]
        let v = (0.5f64).sqrt();
        let space = CnpSpace::new(
            1,
            vec![
                CnpPoint { label: "a".into(), u: vec![c(0.0)] },
                CnpPoint { label: "b".into(), u: vec![c(v)] },
            ],
        )
        .unwrap();
        let g = kernel_matrix(&space);
        assert!((g[(0, 0)] - c(1.0)).norm() < 1e-14);
        assert!((g[(0, 1)] - c(1.0)).norm() < 1e-14);
        assert!((g[(1, 0)] - c(1.0)).norm() < 1e-14);
        assert!((g[(1, 1)] - c(2.0)).norm() < 1e-14);
        let (min, _) = kernel_eig_range(&space);
        assert!(min > 0.0);

        // coincident points rejected
        assert!(matches!(
            CnpSpace::new(
                1,
                vec![
                    CnpPoint { label: "a".into(), u: vec![c(0.5)] },
                    CnpPoint { label: "b".into(), u: vec![c(0.5)] },
                ],
            ),
            Err(Error::CoincidentPoints { .. })
        ));
    }

    #[test]
    fn space_rejects_boundary_points() {
        assert!(matches!(
            CnpSpace::new(1, vec![CnpPoint { label: "p".into(), u: vec![c(1.0)] }]),
            Err(Error::PointOutsideBall { .. })
        ));
    }

    #[test]
    fn restrict_examples() {
        let space = CnpSpace::new(
            1,
            vec![
                CnpPoint { label: "a".into(), u: vec![c(0.0)] },
                CnpPoint { label: "b".into(), u: vec![c(0.4)] },
                CnpPoint { label: "c".into(), u: vec![c(-0.3)] },
            ],
        )
        .unwrap();

        let one = SymVector::one(1, 3);
        let s = restrict(&one, &space).unwrap();
        for v in s.values() {
            assert!((v - c(1.0)).norm() < 1e-10);
        }
        assert!(s.norm() <= 1.0 + 1e-8, "restriction must contract: {}", s.norm());

        let zero = SymVector::zero(1, 3);
        let s = restrict(&zero, &space).unwrap();
        assert!(s.is_zero() || s.norm() < 1e-12);

        // single point at the origin: z1 restricts to the zero function
        let space = origin_space(2);
        let z1 = SymVector::monomial(2, 2, MultiIndex::new(vec![1, 0]), c(1.0)).unwrap();
        let s = restrict(&z1, &space).unwrap();
        assert!(s.norm() < 1e-12);
    }

    #[test]
    fn extend_examples() {
        // kernel at the origin extends to the constant 1
        let space = origin_space(2);
        let s = SampledFunction::from_coeffs(space, vec![c(1.0)]).unwrap();
        let ext = extend_min_norm(&s, 5).unwrap();
        assert!((ext.h.coeff(&MultiIndex::new(vec![0, 0])) - c(1.0)).norm() < 1e-14);
        assert_eq!(ext.h.terms().count(), 1);
        assert!(ext.truncation_bound < 1e-14);

        // d=1, u = 0.5: geometric series sum 0.5^k z^k
        let space = CnpSpace::new(1, vec![CnpPoint { label: "p".into(), u: vec![c(0.5)] }]).unwrap();
        let s = SampledFunction::from_coeffs(space, vec![c(1.0)]).unwrap();
        let ext = extend_min_norm(&s, 8).unwrap();
        for k in 0..=8u32 {
            let got = ext.h.coeff(&MultiIndex::new(vec![k]));
            assert!((got - c(0.5f64.powi(k as i32))).norm() < 1e-14);
        }

        // zero extends to zero
        let space = origin_space(1);
        let s = SampledFunction::from_coeffs(space, vec![c(0.0)]).unwrap();
        let ext = extend_min_norm(&s, 5).unwrap();
        assert!(ext.h.is_zero());
    }

    #[test]
    fn restrict_extend_round_trip() {
        let space = CnpSpace::new(
            2,
            vec![
                CnpPoint { label: "a".into(), u: vec![c(0.1), c(0.2)] },
                CnpPoint { label: "b".into(), u: vec![c(-0.3), c(0.1)] },
                CnpPoint { label: "c".into(), u: vec![Complex64::new(0.2, 0.1), c(0.0)] },
            ],
        )
        .unwrap();
        let s = SampledFunction::from_coeffs(
            space.clone(),
            vec![c(1.0), Complex64::new(-0.5, 0.3), c(0.25)],
        )
        .unwrap();
        let ext = extend_min_norm(&s, 25).unwrap();
        let back = restrict(&ext.h, &space).unwrap();
        let before = s.values();
        let after = back.values();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).norm() < 1e-8);
        }
        // norm preservation through the truncated extension
        assert!((ext.h.da_norm() - s.norm()).abs() < 1e-8);
    }

    #[test]
    fn restriction_is_contractive_randomized() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let space = CnpSpace::new(
            2,
            vec![
                CnpPoint { label: "a".into(), u: vec![c(0.2), c(0.1)] },
                CnpPoint { label: "b".into(), u: vec![c(-0.1), Complex64::new(0.0, 0.3)] },
                CnpPoint { label: "c".into(), u: vec![c(0.4), c(0.0)] },
                CnpPoint { label: "d".into(), u: vec![Complex64::new(0.1, -0.2), c(0.25)] },
            ],
        )
        .unwrap();
        for _ in 0..20 {
            let mut h = SymVector::zero(2, 3);
            for n in crate::words::enumerate_multi_indices(2, 3) {
                let coeff =
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                h = h.add(&SymVector::monomial(2, 3, n, coeff).unwrap()).unwrap();
            }
            let s = restrict(&h, &space).unwrap();
            assert!(
                s.norm() <= h.da_norm() + 1e-8,
                "restriction expanded the norm: {} > {}",
                s.norm(),
                h.da_norm()
            );
        }
    }

    #[test]
    fn factor_sequence_cnp_examples() {
        let config = FactorConfig::default();
        // single f = k(., origin) = 1: phi = 1, F = 1 on samples
        let space = origin_space(1);
        let s = SampledFunction::from_coeffs(space.clone(), vec![c(1.0)]).unwrap();
        let out = factor_sequence_cnp(&space, &[s], 2, 6, &config).unwrap();
        assert!(out.max_pointwise_error < 1e-10);
        let phi_vals = out.phi[0].values();
        let f_vals = out.big_f.values();
        assert!((phi_vals[0] * f_vals[0] - c(1.0)).norm() < 1e-10);

        // d=1, u = {0, 0.5}, f = z restricted: pointwise identity at both
        let space = CnpSpace::new(
            1,
            vec![
                CnpPoint { label: "a".into(), u: vec![c(0.0)] },
                CnpPoint { label: "b".into(), u: vec![c(0.5)] },
            ],
        )
        .unwrap();
        let z = SymVector::monomial(1, 1, MultiIndex::new(vec![1]), c(1.0)).unwrap();
        let s = restrict(&z, &space).unwrap();
        let out = factor_sequence_cnp(&space, &[s], 3, 14, &config).unwrap();
        assert!(
            out.max_pointwise_error < 1e-6,
            "pointwise identity error {}",
            out.max_pointwise_error
        );

        // empty input rejected
        assert!(matches!(
            factor_sequence_cnp(&space, &[], 2, 6, &config),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let space = CnpSpace::new(
            2,
            vec![CnpPoint { label: "p0".into(), u: vec![Complex64::new(0.1, 0.0), c(0.2)] }],
        )
        .unwrap();
        let text = serde_json::to_string(&space).unwrap();
        assert!(text.contains("\"label\":\"p0\""));
        let back: CnpSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, space);
    }
}
