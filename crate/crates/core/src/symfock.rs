//! Truncated Drury-Arveson space `H^2_{d, <=D}`: sparse polynomials on the
//! monomial basis with norm `||h||^2 = sum |h_n|^2 n!/|n|!`, the evaluation
//! co-isometry from Fock space, its adjoint (the isometric minimal-norm
//! lift), polynomial products, point evaluation, and series inversion.
//!
//! The lift sends `z^n` to `(n!/|n|!) sum_{lambda(alpha)=n} xi_alpha`. Summing
//! the fiber with unit coefficients instead would not be isometric; the
//! chosen weights are the unique ones making the lift the adjoint of the
//! evaluation map, so that `evaluate(lift(h)) = h` and `||lift(h)|| = ||h||`.

use crate::error::{Error, Result};
use crate::fock::FreeVector;
use crate::words::{words_with_count, MultiIndex};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A polynomial in the truncated Drury-Arveson space, stored sparsely on the
/// monomial basis `z^n`, `|n| <= degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct SymVector {
    d: u32,
    degree: u32,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl SymVector {
    pub fn zero(d: u32, degree: u32) -> Self {
        SymVector { d, degree, terms: BTreeMap::new() }
    }

    /// The constant polynomial `value`.
    pub fn constant(d: u32, degree: u32, value: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if value.norm_sqr() != 0.0 {
            terms.insert(MultiIndex::zero(d), value);
        }
        SymVector { d, degree, terms }
    }

    pub fn one(d: u32, degree: u32) -> Self {
        Self::constant(d, degree, Complex64::new(1.0, 0.0))
    }

    /// The monomial `c * z^n`.
    pub fn monomial(d: u32, degree: u32, n: MultiIndex, c: Complex64) -> Result<Self> {
        check_index(&n, d, degree)?;
        let mut terms = BTreeMap::new();
        if c.norm_sqr() != 0.0 {
            terms.insert(n, c);
        }
        Ok(SymVector { d, degree, terms })
    }

    /// The coordinate function `z_i` (1-based `i`).
    pub fn coordinate(d: u32, degree: u32, i: u32) -> Result<Self> {
        Self::monomial(d, degree, MultiIndex::unit(i, d)?, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms<I>(d: u32, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut map: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (n, c) in terms {
            check_index(&n, d, degree)?;
            *map.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm_sqr() != 0.0);
        Ok(SymVector { d, degree, terms: map })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: &MultiIndex) -> Complex64 {
        self.terms.get(n).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree in the support (0 for the zero polynomial).
    pub fn actual_degree(&self) -> u32 {
        self.terms.keys().map(|n| n.total()).max().unwrap_or(0)
    }

    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        if self.actual_degree() > degree {
            return Err(Error::DegreeExceeded {
                len: self.actual_degree() as usize,
                cap: degree,
            });
        }
        Ok(SymVector { d: self.d, degree, terms: self.terms.clone() })
    }

    /// Drops all coefficients of total degree above `cut`.
    pub fn truncated(&self, cut: u32) -> SymVector {
        let terms = self
            .terms
            .iter()
            .filter(|(n, _)| n.total() <= cut)
            .map(|(n, c)| (n.clone(), *c))
            .collect();
        SymVector { d: self.d, degree: self.degree.min(cut), terms }
    }

    /// The Drury-Arveson norm squared, `sum |h_n|^2 n!/|n|!`.
    pub fn da_norm_sq(&self) -> f64 {
        // + 0.0 clears the -0.0 that std's empty f64 sum starts from
        self.terms
            .iter()
            .map(|(n, c)| c.norm_sqr() * n.weight().expect("weight overflow"))
            .sum::<f64>()
            + 0.0
    }

    pub fn da_norm(&self) -> f64 {
        self.da_norm_sq().sqrt()
    }

    /// Weighted inner product, linear in `self`, conjugate-linear in `other`.
    pub fn da_inner(&self, other: &SymVector) -> Result<Complex64> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "sym vectors with d={} vs d={}",
                self.d, other.d
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in &self.terms {
            if let Some(o) = other.terms.get(n) {
                acc += c * o.conj() * n.weight().expect("weight overflow");
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &SymVector) -> Result<SymVector> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "sym vectors with d={} vs d={}",
                self.d, other.d
            )));
        }
        let degree = self.degree.max(other.degree);
        let mut terms = self.terms.clone();
        for (n, c) in &other.terms {
            let entry = terms.entry(n.clone()).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
            if entry.norm_sqr() == 0.0 {
                terms.remove(n);
            }
        }
        Ok(SymVector { d: self.d, degree, terms })
    }

    pub fn sub(&self, other: &SymVector) -> Result<SymVector> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> SymVector {
        if c.norm_sqr() == 0.0 {
            return SymVector::zero(self.d, self.degree);
        }
        let terms = self.terms.iter().map(|(n, v)| (n.clone(), v * c)).collect();
        SymVector { d: self.d, degree: self.degree, terms }
    }

    /// Point evaluation `sum h_n z^n` at a point of the open unit ball.
    pub fn point_eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.d as usize {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, expected {}",
                z.len(),
                self.d
            )));
        }
        let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq >= 1.0 {
            return Err(Error::PointOutsideBall { norm: norm_sq.sqrt() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in &self.terms {
            let mut monomial = Complex64::new(1.0, 0.0);
            for (zi, &e) in z.iter().zip(n.exponents()) {
                monomial *= zi.powu(e);
            }
            acc += c * monomial;
        }
        Ok(acc)
    }
}

fn check_index(n: &MultiIndex, d: u32, degree: u32) -> Result<()> {
    if n.d() != d {
        return Err(Error::DimensionMismatch(format!(
            "multi-index of length {} in dimension {}",
            n.d(),
            d
        )));
    }
    if n.total() > degree {
        return Err(Error::DegreeExceeded { len: n.total() as usize, cap: degree });
    }
    Ok(())
}

/// Symmetrizes a Fock vector: coefficient of `z^n` is the sum of the word
/// coefficients over the fiber `lambda(alpha) = n`. Linear; a co-isometry
/// onto the truncated Drury-Arveson space.
pub fn evaluate_fock(v: &FreeVector) -> SymVector {
    let mut terms: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
    for (word, c) in v.terms() {
        let n = word
            .letter_count(v.d())
            .expect("letters validated at construction");
        *terms.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    terms.retain(|_, c| c.norm_sqr() != 0.0);
    SymVector { d: v.d(), degree: v.degree(), terms }
}

/// The isometric minimal-norm lift, adjoint to [`evaluate_fock`]:
/// `z^n -> (n!/|n|!) sum_{lambda(alpha)=n} xi_alpha`.
///
/// Materializes one word per fiber element; rejects inputs whose fibers would
/// exceed `cap` words in total.
pub fn lift_min_norm(h: &SymVector, cap: usize) -> Result<FreeVector> {
    let mut required: u128 = 0;
    for (n, _) in h.terms() {
        required = required
            .checked_add(n.multinomial()?)
            .ok_or(Error::Overflow("lift support size"))?;
    }
    if required > cap as u128 {
        return Err(Error::BasisCapExceeded { required, cap });
    }
    let mut terms: Vec<(crate::words::Word, Complex64)> = Vec::with_capacity(required as usize);
    for (n, c) in h.terms() {
        let weight = n.weight()?;
        let scaled = c * weight;
        for word in words_with_count(n) {
            terms.push((word, scaled));
        }
    }
    FreeVector::from_terms(h.d(), h.degree(), terms)
}

/// Coefficientwise product truncated to total degree `dout`.
pub fn mult_sym(f: &SymVector, g: &SymVector, dout: u32) -> Result<SymVector> {
    if f.d() != g.d() {
        return Err(Error::DimensionMismatch(format!(
            "product of sym vectors with d={} and d={}",
            f.d(),
            g.d()
        )));
    }
    let mut terms: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
    for (n, a) in &f.terms {
        if n.total() > dout {
            continue;
        }
        for (m, b) in &g.terms {
            if n.total() + m.total() > dout {
                continue;
            }
            let key = n.add(m);
            *terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += a * b;
        }
    }
    terms.retain(|_, c| c.norm_sqr() != 0.0);
    Ok(SymVector { d: f.d(), degree: dout, terms })
}

/// Multiplicative inverse of a power series with `q(0) != 0`, truncated to
/// total degree `dout`. Coefficients are computed degree by degree from the
/// convolution recursion.
pub fn series_inverse(q: &SymVector, dout: u32) -> Result<SymVector> {
    let q0 = q.coeff(&MultiIndex::zero(q.d()));
    if q0.norm_sqr() == 0.0 {
        return Err(Error::InvalidInput(
            "series inversion requires a nonzero constant term".into(),
        ));
    }
    let mut inv: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
    inv.insert(MultiIndex::zero(q.d()), Complex64::new(1.0, 0.0) / q0);
    for total in 1..=dout {
        let mut level: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (p, qc) in q.terms() {
            let pt = p.total();
            if pt == 0 || pt > total {
                continue;
            }
            for (m, ic) in inv.iter() {
                if m.total() == total - pt {
                    let key = p.add(m);
                    *level.entry(key).or_insert(Complex64::new(0.0, 0.0)) += qc * ic;
                }
            }
        }
        for (n, s) in level {
            let value = -s / q0;
            if value.norm_sqr() != 0.0 {
                inv.insert(n, value);
            }
        }
    }
    Ok(SymVector { d: q.d(), degree: dout, terms: inv })
}

// --- serde: {"d": 2, "degree": 4, "terms": [{"n": [1,1], "re": 1.0, "im": 0.0}]}

#[derive(Serialize, Deserialize)]
struct SymTermDto {
    n: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct SymVectorDto {
    d: u32,
    degree: u32,
    terms: Vec<SymTermDto>,
}

impl Serialize for SymVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = SymVectorDto {
            d: self.d,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(n, c)| SymTermDto { n: n.exponents().to_vec(), re: c.re, im: c.im })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = SymVectorDto::deserialize(deserializer)?;
        let terms: Vec<(MultiIndex, Complex64)> = dto
            .terms
            .into_iter()
            .map(|t| (MultiIndex::new(t.n), Complex64::new(t.re, t.im)))
            .collect();
        SymVector::from_terms(dto.d, dto.degree, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FreeVector;
    use crate::words::Word;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn mono(d: u32, degree: u32, exps: &[u32]) -> SymVector {
        SymVector::monomial(d, degree, MultiIndex::new(exps.to_vec()), c(1.0)).unwrap()
    }

    #[test]
    fn da_norm_examples() {
        assert!((SymVector::one(2, 3).da_norm() - 1.0).abs() < 1e-15);
        // ||z1 z2||^2 = 1!1!/2! = 1/2
        assert!((mono(2, 3, &[1, 1]).da_norm() - (0.5f64).sqrt()).abs() < 1e-15);
        // ||z1^2||^2 = 2!/2! = 1
        assert!((mono(2, 3, &[2, 0]).da_norm() - 1.0).abs() < 1e-15);
    }

    /// Independent oracle for the monomial weights: the norm of a kernel
    /// combination computed from the kernel Gram matrix must match the
    /// coefficient formula applied to the truncated kernel expansion
    /// `k(., y) = sum_n multinomial(n) conj(y)^n z^n`.
    #[test]
    fn da_norm_matches_kernel_gram_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for d in [1u32, 2, 3] {
            for _ in 0..5 {
                let m = rng.random_range(2..=4);
                let mut points: Vec<Vec<Complex64>> = Vec::new();
                for _ in 0..m {
                    // keep ||y|| <= 0.5 so the degree-30 tail is negligible
                    let mut y: Vec<Complex64> =
                        (0..d).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                    let norm: f64 = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                    let scale = 0.5 * rng.random_range(0.2..1.0) / norm.max(1e-9);
                    for v in &mut y {
                        *v *= scale;
                    }
                    points.push(y);
                }
                let coeffs: Vec<Complex64> = (0..m)
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();

                // Gram route: ||sum c_j k(., y_j)||^2 = c* G c with G_ij = k(y_i, y_j)
                let mut gram_norm_sq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    for j in 0..m {
                        let ip: Complex64 = points[i]
                            .iter()
                            .zip(&points[j])
                            .map(|(a, b)| a * b.conj())
                            .sum();
                        let k = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - ip);
                        gram_norm_sq += coeffs[i].conj() * k * coeffs[j];
                    }
                }

                // coefficient route at truncation degree 30
                let deg = 30;
                let mut h = SymVector::zero(d, deg);
                for n in crate::words::enumerate_multi_indices(d, deg) {
                    let mult = n.multinomial().unwrap() as f64;
                    let mut coeff = Complex64::new(0.0, 0.0);
                    for (y, cj) in points.iter().zip(&coeffs) {
                        let mut ybar_n = Complex64::new(1.0, 0.0);
                        for (yi, &e) in y.iter().zip(n.exponents()) {
                            ybar_n *= yi.conj().powu(e);
                        }
                        coeff += cj * ybar_n;
                    }
                    coeff *= mult;
                    if coeff.norm_sqr() > 0.0 {
                        h = h
                            .add(&SymVector::monomial(d, deg, n, coeff).unwrap())
                            .unwrap();
                    }
                }
                let diff = (h.da_norm_sq() - gram_norm_sq.re).abs();
                assert!(diff < 1e-8, "d={d}: kernel Gram oracle mismatch {diff}");
                assert!(gram_norm_sq.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn evaluate_fock_examples() {
        let v = FreeVector::basis_vector(2, 3, Word::from_unchecked(vec![1, 2])).unwrap();
        assert_eq!(evaluate_fock(&v), mono(2, 3, &[1, 1]));

        let sym = FreeVector::from_terms(
            2,
            3,
            vec![
                (Word::from_unchecked(vec![1, 2]), c(0.5)),
                (Word::from_unchecked(vec![2, 1]), c(0.5)),
            ],
        )
        .unwrap();
        assert_eq!(evaluate_fock(&sym), mono(2, 3, &[1, 1]));

        let s = 1.0 / 2.0f64.sqrt();
        let anti = FreeVector::from_terms(
            2,
            3,
            vec![
                (Word::from_unchecked(vec![1, 2]), c(s)),
                (Word::from_unchecked(vec![2, 1]), c(-s)),
            ],
        )
        .unwrap();
        assert!(evaluate_fock(&anti).is_zero());
    }

    #[test]
    fn lift_examples() {
        let one = SymVector::one(2, 3);
        assert_eq!(lift_min_norm(&one, 1000).unwrap(), FreeVector::vacuum(2, 3));

        let h = mono(2, 3, &[1, 1]);
        let lifted = lift_min_norm(&h, 1000).unwrap();
        let expected = FreeVector::from_terms(
            2,
            3,
            vec![
                (Word::from_unchecked(vec![1, 2]), c(0.5)),
                (Word::from_unchecked(vec![2, 1]), c(0.5)),
            ],
        )
        .unwrap();
        assert_eq!(lifted, expected);
        assert!((lifted.norm_sq() - 0.5).abs() < 1e-15);
        assert!((lifted.norm_sq() - h.da_norm_sq()).abs() < 1e-15);

        let z1 = mono(2, 3, &[1, 0]);
        let lifted = lift_min_norm(&z1, 1000).unwrap();
        assert_eq!(
            lifted,
            FreeVector::basis_vector(2, 3, Word::from_unchecked(vec![1])).unwrap()
        );
        assert!((lifted.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lift_is_fiber_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_poly(&mut rng, 3, 4);
        let lifted = lift_min_norm(&h, 100_000).unwrap();
        let transposed = lifted.transpose_unitary();
        assert_eq!(lifted, transposed);
    }

    #[test]
    fn mult_sym_examples() {
        let one = SymVector::one(2, 4);
        let g = mono(2, 4, &[1, 1]).scale(c(2.0));
        assert_eq!(mult_sym(&one, &g, 4).unwrap(), g);

        let z1 = mono(2, 4, &[1, 0]);
        let z2 = mono(2, 4, &[0, 1]);
        assert_eq!(mult_sym(&z1, &z2, 4).unwrap(), mono(2, 4, &[1, 1]));

        let f = mono(1, 4, &[1]).add(&SymVector::one(1, 4)).unwrap();
        let sq = mult_sym(&f, &f, 4).unwrap();
        let expected = SymVector::from_terms(
            1,
            4,
            vec![
                (MultiIndex::new(vec![2]), c(1.0)),
                (MultiIndex::new(vec![1]), c(2.0)),
                (MultiIndex::new(vec![0]), c(1.0)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn point_eval_examples() {
        let one = SymVector::one(2, 3);
        let z = vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.0)];
        assert_eq!(one.point_eval(&z).unwrap(), c(1.0));

        let h = mono(2, 3, &[1, 1]);
        let z = vec![c(0.5), c(0.5)];
        assert!((h.point_eval(&z).unwrap() - c(0.25)).norm() < 1e-15);

        let h = mono(2, 3, &[2, 0]).add(&SymVector::one(2, 3)).unwrap();
        let z = vec![c(0.3), c(0.0)];
        assert!((h.point_eval(&z).unwrap() - c(1.09)).norm() < 1e-15);
    }

    #[test]
    fn point_eval_rejects_boundary() {
        let h = SymVector::one(2, 3);
        let z = vec![c(1.0), c(0.0)];
        assert!(matches!(h.point_eval(&z), Err(Error::PointOutsideBall { .. })));
    }

    #[test]
    fn series_inverse_geometric() {
        // (1 - z/2)^{-1} = sum (z/2)^k
        let q = SymVector::from_terms(
            1,
            6,
            vec![
                (MultiIndex::new(vec![0]), c(1.0)),
                (MultiIndex::new(vec![1]), c(-0.5)),
            ],
        )
        .unwrap();
        let inv = series_inverse(&q, 6).unwrap();
        for k in 0..=6u32 {
            let got = inv.coeff(&MultiIndex::new(vec![k]));
            assert!((got - c(0.5f64.powi(k as i32))).norm() < 1e-14);
        }
        let prod = mult_sym(&q, &inv, 6).unwrap();
        assert!((prod.sub(&SymVector::one(1, 6)).unwrap()).da_norm() < 1e-14);
    }

    pub(crate) fn random_poly(rng: &mut ChaCha8Rng, d: u32, degree: u32) -> SymVector {
        let mut h = SymVector::zero(d, degree);
        for n in crate::words::enumerate_multi_indices(d, degree) {
            let coeff = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h = h.add(&SymVector::monomial(d, degree, n, coeff).unwrap()).unwrap();
        }
        h
    }

    #[test]
    fn lift_evaluate_duality_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [1u32, 2, 3] {
            for _ in 0..20 {
                let h = random_poly(&mut rng, d, 5);
                let lifted = lift_min_norm(&h, 100_000).unwrap();
                let back = evaluate_fock(&lifted);
                // support is reproduced exactly; values re-round once when the
                // fiber sum collapses, so allow final-rounding slack only
                let support_a: Vec<_> = back.terms().map(|(n, _)| n.clone()).collect();
                let support_b: Vec<_> = h.terms().map(|(n, _)| n.clone()).collect();
                assert_eq!(support_a, support_b);
                for (n, c) in h.terms() {
                    let rel = (back.coeff(n) - c).norm() / c.norm();
                    assert!(rel < 1e-13, "coefficient mismatch {rel}");
                }
                let rel = (lifted.norm() - h.da_norm()).abs() / h.da_norm().max(1e-300);
                assert!(rel < 1e-12, "norm mismatch {rel}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mult_sym_commutes_and_associates(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(&mut rng, 2, 2);
            let g = random_poly(&mut rng, 2, 2);
            let h = random_poly(&mut rng, 2, 2);
            let dout = 6;
            let fg = mult_sym(&f, &g, dout).unwrap();
            let gf = mult_sym(&g, &f, dout).unwrap();
            prop_assert!(fg.sub(&gf).unwrap().da_norm() < 1e-12);
            let left = mult_sym(&fg, &h, dout).unwrap();
            let right = mult_sym(&f, &mult_sym(&g, &h, dout).unwrap(), dout).unwrap();
            prop_assert!(left.sub(&right).unwrap().da_norm() < 1e-11);
        }
    }

    #[test]
    fn json_round_trip() {
        let h = SymVector::from_terms(
            2,
            4,
            vec![(MultiIndex::new(vec![1, 1]), Complex64::new(1.0, -0.5))],
        )
        .unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert!(text.contains("\"n\":[1,1]"));
        let back: SymVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
    }
}
