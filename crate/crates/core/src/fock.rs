//! Truncated full Fock space over `d` letters: sparse vectors on the
//! orthonormal word basis, left/right creation operators and their adjoints,
//! the transpose unitary, and free polynomials acting by creation words.
//!
//! Creation semantics are fixed once and for all: the left creation word
//! `L_alpha` prepends `alpha`, the right creation word `R_alpha` appends
//! `alpha` (in reading order). With this convention the transpose unitary
//! conjugates left to right with the reversed word, `W L_alpha W* = R_{alpha^t}`.
//! Coefficients pushed past the degree cap are dropped, and every truncating
//! operation reports the l2-mass it discarded.

use crate::error::{Error, Result};
use crate::words::{enumerate_words, Word};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which side a creation operator or free polynomial acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A vector in the truncated Fock space `F^2_{d, <=D}`, stored sparsely on
/// the word basis. The basis is orthonormal, so `norm^2 = sum |c_alpha|^2`.
#[derive(Clone, PartialEq, Debug)]
pub struct FreeVector {
    d: u32,
    degree: u32,
    terms: BTreeMap<Word, Complex64>,
}

impl FreeVector {
    pub fn zero(d: u32, degree: u32) -> Self {
        FreeVector { d, degree, terms: BTreeMap::new() }
    }

    /// The vacuum vector `xi_empty`.
    pub fn vacuum(d: u32, degree: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::empty(), Complex64::new(1.0, 0.0));
        FreeVector { d, degree, terms }
    }

    /// The basis vector `xi_alpha`.
    pub fn basis_vector(d: u32, degree: u32, word: Word) -> Result<Self> {
        check_word(&word, d, degree)?;
        let mut terms = BTreeMap::new();
        terms.insert(word, Complex64::new(1.0, 0.0));
        Ok(FreeVector { d, degree, terms })
    }

    pub fn from_terms<I>(d: u32, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        let mut map: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (word, c) in terms {
            check_word(&word, d, degree)?;
            *map.entry(word).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm_sqr() != 0.0);
        Ok(FreeVector { d, degree, terms: map })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> Complex64 {
        self.terms.get(word).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length in the support (0 for the zero vector).
    pub fn actual_degree(&self) -> u32 {
        self.terms.keys().map(|w| w.len() as u32).max().unwrap_or(0)
    }

    /// Re-caps the degree. Raising is free; lowering fails if support sticks out.
    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        if self.actual_degree() > degree {
            return Err(Error::DegreeExceeded {
                len: self.actual_degree() as usize,
                cap: degree,
            });
        }
        Ok(FreeVector { d: self.d, degree, terms: self.terms.clone() })
    }

    /// Drops all coefficients of word length above `cut`; returns the result
    /// and the l2-mass removed.
    pub fn truncated(&self, cut: u32) -> (Self, f64) {
        let mut kept = BTreeMap::new();
        let mut dropped_sq = 0.0;
        for (word, c) in &self.terms {
            if word.len() as u32 <= cut {
                kept.insert(word.clone(), *c);
            } else {
                dropped_sq += c.norm_sqr();
            }
        }
        (
            FreeVector { d: self.d, degree: self.degree.min(cut), terms: kept },
            dropped_sq.sqrt(),
        )
    }

    pub fn norm_sq(&self) -> f64 {
        // + 0.0 clears the -0.0 that std's empty f64 sum starts from
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>() + 0.0
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Inner product, linear in `self`, conjugate-linear in `other`.
    pub fn inner(&self, other: &FreeVector) -> Result<Complex64> {
        self.check_compatible(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        if self.terms.len() <= other.terms.len() {
            for (word, c) in &self.terms {
                if let Some(o) = other.terms.get(word) {
                    acc += c * o.conj();
                }
            }
        } else {
            for (word, o) in &other.terms {
                if let Some(c) = self.terms.get(word) {
                    acc += c * o.conj();
                }
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (word, c) in &other.terms {
            let entry = terms.entry(word.clone()).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
            if entry.norm_sqr() == 0.0 {
                terms.remove(word);
            }
        }
        Ok(FreeVector { d: self.d, degree: self.degree, terms })
    }

    pub fn sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> FreeVector {
        if c.norm_sqr() == 0.0 {
            return FreeVector::zero(self.d, self.degree);
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        FreeVector { d: self.d, degree: self.degree, terms }
    }

    /// Adds `c * other` in place semantics (returns the sum).
    pub fn axpy(&self, c: Complex64, other: &FreeVector) -> Result<FreeVector> {
        self.add(&other.scale(c))
    }

    /// Single-letter creation: prepend (left) or append (right) letter `i`.
    /// Returns the image and the l2-mass dropped past the degree cap.
    pub fn create(&self, letter: u32, side: Side) -> Result<(FreeVector, f64)> {
        let word = Word::new(vec![letter], self.d)?;
        self.apply_word(&word, side)
    }

    /// Adjoint of single-letter creation: strip the leading (left) or
    /// trailing (right) letter `i`, annihilating mismatched words.
    pub fn create_adjoint(&self, letter: u32, side: Side) -> Result<FreeVector> {
        let word = Word::new(vec![letter], self.d)?;
        self.apply_word_adjoint(&word, side)
    }

    /// Creation by a whole word: `L_alpha` prepends, `R_alpha` appends.
    pub fn apply_word(&self, word: &Word, side: Side) -> Result<(FreeVector, f64)> {
        check_word(word, self.d, u32::MAX)?;
        let mut terms = BTreeMap::new();
        let mut dropped_sq = 0.0;
        for (base, c) in &self.terms {
            if base.len() + word.len() > self.degree as usize {
                dropped_sq += c.norm_sqr();
                continue;
            }
            let image = match side {
                Side::Left => word.concat(base),
                Side::Right => base.concat(word),
            };
            terms.insert(image, *c);
        }
        Ok((
            FreeVector { d: self.d, degree: self.degree, terms },
            dropped_sq.sqrt(),
        ))
    }

    /// Adjoint of creation by a word (strip `word` from the matching end).
    pub fn apply_word_adjoint(&self, word: &Word, side: Side) -> Result<FreeVector> {
        check_word(word, self.d, u32::MAX)?;
        let mut terms = BTreeMap::new();
        for (base, c) in &self.terms {
            let stripped = match side {
                Side::Left => base.strip_prefix(word),
                Side::Right => base.strip_suffix(word),
            };
            if let Some(rest) = stripped {
                terms.insert(rest, *c);
            }
        }
        Ok(FreeVector { d: self.d, degree: self.degree, terms })
    }

    /// The transpose unitary `W xi_alpha = xi_{alpha^t}`. Isometric, involutive.
    pub fn transpose_unitary(&self) -> FreeVector {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.transpose(), *c))
            .collect();
        FreeVector { d: self.d, degree: self.degree, terms }
    }

    fn check_compatible(&self, other: &FreeVector) -> Result<()> {
        if self.d != other.d || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "free vectors (d={}, D={}) vs (d={}, D={})",
                self.d, self.degree, other.d, other.degree
            )));
        }
        Ok(())
    }
}

fn check_word(word: &Word, d: u32, degree: u32) -> Result<()> {
    if word.max_letter() > d {
        return Err(Error::LetterOutOfRange { letter: word.max_letter(), d });
    }
    if degree != u32::MAX && word.len() as u32 > degree {
        return Err(Error::DegreeExceeded { len: word.len(), cap: degree });
    }
    Ok(())
}

/// A free polynomial `sum c_alpha L_alpha` (or `R_alpha`), finitely supported.
#[derive(Clone, PartialEq, Debug)]
pub struct FreePoly {
    d: u32,
    side: Side,
    terms: BTreeMap<Word, Complex64>,
}

impl FreePoly {
    /// The identity polynomial (coefficient 1 on the empty word).
    pub fn identity(d: u32, side: Side) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::empty(), Complex64::new(1.0, 0.0));
        FreePoly { d, side, terms }
    }

    /// The single creation word `L_alpha` / `R_alpha`.
    pub fn monomial(d: u32, side: Side, word: Word) -> Result<Self> {
        check_word(&word, d, u32::MAX)?;
        let mut terms = BTreeMap::new();
        terms.insert(word, Complex64::new(1.0, 0.0));
        Ok(FreePoly { d, side, terms })
    }

    pub fn from_terms<I>(d: u32, side: Side, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        let mut map: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (word, c) in terms {
            check_word(&word, d, u32::MAX)?;
            *map.entry(word).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm_sqr() != 0.0);
        Ok(FreePoly { d, side, terms: map })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|w| w.len() as u32).max().unwrap_or(0)
    }

    pub fn scale(&self, c: Complex64) -> FreePoly {
        let mut terms: BTreeMap<Word, Complex64> = self
            .terms
            .iter()
            .map(|(w, v)| (w.clone(), v * c))
            .collect();
        terms.retain(|_, v| v.norm_sqr() != 0.0);
        FreePoly { d: self.d, side: self.side, terms }
    }

    /// Applies `sum c_alpha (creation by alpha)` to `v`, truncating at the
    /// degree cap of `v`; returns the image and the discarded l2-mass.
    pub fn apply(&self, v: &FreeVector) -> Result<(FreeVector, f64)> {
        if self.d != v.d() {
            return Err(Error::DimensionMismatch(format!(
                "free polynomial d={} applied to vector d={}",
                self.d,
                v.d()
            )));
        }
        let mut acc = BTreeMap::new();
        let mut dropped = BTreeMap::new();
        for (alpha, c) in &self.terms {
            for (base, vc) in &v.terms {
                let image = match self.side {
                    Side::Left => alpha.concat(base),
                    Side::Right => base.concat(alpha),
                };
                let target = if image.len() as u32 <= v.degree {
                    &mut acc
                } else {
                    &mut dropped
                };
                let entry = target.entry(image).or_insert(Complex64::new(0.0, 0.0));
                *entry += c * vc;
            }
        }
        acc.retain(|_, c: &mut Complex64| c.norm_sqr() != 0.0);
        let dropped_mass: f64 = dropped.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        Ok((
            FreeVector { d: v.d, degree: v.degree, terms: acc },
            dropped_mass,
        ))
    }

    /// Applies the adjoint `sum conj(c_alpha) (creation by alpha)^*` to `v`.
    pub fn apply_adjoint(&self, v: &FreeVector) -> Result<FreeVector> {
        if self.d != v.d() {
            return Err(Error::DimensionMismatch(format!(
                "free polynomial d={} applied to vector d={}",
                self.d,
                v.d()
            )));
        }
        let mut acc = BTreeMap::new();
        for (alpha, c) in &self.terms {
            for (base, vc) in &v.terms {
                let stripped = match self.side {
                    Side::Left => base.strip_prefix(alpha),
                    Side::Right => base.strip_suffix(alpha),
                };
                if let Some(rest) = stripped {
                    let entry = acc.entry(rest).or_insert(Complex64::new(0.0, 0.0));
                    *entry += c.conj() * vc;
                }
            }
        }
        acc.retain(|_, c: &mut Complex64| c.norm_sqr() != 0.0);
        Ok(FreeVector { d: v.d, degree: v.degree, terms: acc })
    }

    /// The coefficient family as a Fock vector (symbol of the polynomial).
    pub fn to_vector(&self, degree: u32) -> Result<FreeVector> {
        FreeVector::from_terms(self.d, degree, self.terms.iter().map(|(w, c)| (w.clone(), *c)))
    }
}

/// Matrix of a linear operator in the graded word basis of `F^2_{d, <=D}`.
/// Basis order is graded-lexicographic; entry `(i, j)` is the coefficient of
/// basis word `i` in the image of basis word `j`.
pub fn operator_matrix<F>(d: u32, degree: u32, cap: usize, op: F) -> Result<DMatrix<Complex64>>
where
    F: Fn(&FreeVector) -> Result<FreeVector>,
{
    let basis = enumerate_words(d, degree, cap)?;
    let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (j, word) in basis.iter().enumerate() {
        let image = op(&FreeVector::basis_vector(d, degree, word.clone())?)?;
        for (w, c) in image.terms() {
            if let Some(&i) = index.get(w) {
                m[(i, j)] = *c;
            }
        }
    }
    Ok(m)
}

// --- serde: {"d": 2, "degree": 3, "terms": [{"word": [1,2], "re": 0.5, "im": 0.0}]}

#[derive(Serialize, Deserialize)]
struct FreeTermDto {
    word: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FreeVectorDto {
    d: u32,
    degree: u32,
    terms: Vec<FreeTermDto>,
}

impl Serialize for FreeVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = FreeVectorDto {
            d: self.d,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| FreeTermDto { word: w.letters().to_vec(), re: c.re, im: c.im })
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FreeVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = FreeVectorDto::deserialize(deserializer)?;
        let terms: Vec<(Word, Complex64)> = dto
            .terms
            .into_iter()
            .map(|t| {
                Word::new(t.word, dto.d)
                    .map(|w| (w, Complex64::new(t.re, t.im)))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<std::result::Result<_, D::Error>>()?;
        FreeVector::from_terms(dto.d, dto.degree, terms).map_err(serde::de::Error::custom)
    }
}
