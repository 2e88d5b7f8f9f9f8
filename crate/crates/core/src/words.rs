//! Combinatorics of the free semigroup on `d` letters: words, the transpose
//! (letter-reversal) map, the letter counting map onto multi-indices, and
//! graded enumeration of the word and monomial bases.
//!
//! Letters are 1-based everywhere, including serialization. The canonical
//! basis order is graded-lexicographic (by length, then lexicographic within
//! a length); every matrix representation in the crate inherits it.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A word over the alphabet `{1, ..., d}`. The empty word is valid.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word, checking every letter against the alphabet size.
    pub fn new(letters: Vec<u32>, d: u32) -> Result<Self> {
        for &l in &letters {
            if l < 1 || l > d {
                return Err(Error::LetterOutOfRange { letter: l, d });
            }
        }
        Ok(Word { letters })
    }

    pub(crate) fn from_unchecked(letters: Vec<u32>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reverses the letters: `(i_1 ... i_k) -> (i_k ... i_1)`. Involutive.
    pub fn transpose(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// Counts letter occurrences into a multi-index of length `d`.
    pub fn letter_count(&self, d: u32) -> Result<MultiIndex> {
        let mut exps = vec![0u32; d as usize];
        for &l in &self.letters {
            if l < 1 || l > d {
                return Err(Error::LetterOutOfRange { letter: l, d });
            }
            exps[(l - 1) as usize] += 1;
        }
        Ok(MultiIndex { exponents: exps })
    }

    /// Concatenation `uv`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn prepend(&self, letter: u32) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn append(&self, letter: u32) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    /// Removes `prefix` from the front, if present.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.letters
            .strip_prefix(prefix.letters.as_slice())
            .map(|rest| Word { letters: rest.to_vec() })
    }

    /// Removes `suffix` from the back, if present.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.letters
            .strip_suffix(suffix.letters.as_slice())
            .map(|rest| Word { letters: rest.to_vec() })
    }

    pub fn max_letter(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }
}

impl Ord for Word {
    /// Graded-lexicographic: shorter words first, lexicographic within a length.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "e")
        } else {
            let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", s.join("."))
        }
    }
}

/// A commutative exponent vector in `N^d`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex { exponents }
    }

    pub fn zero(d: u32) -> Self {
        MultiIndex { exponents: vec![0; d as usize] }
    }

    /// The unit multi-index `e_i` (1-based `i`).
    pub fn unit(i: u32, d: u32) -> Result<Self> {
        if i < 1 || i > d {
            return Err(Error::LetterOutOfRange { letter: i, d });
        }
        let mut exps = vec![0; d as usize];
        exps[(i - 1) as usize] = 1;
        Ok(MultiIndex { exponents: exps })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn d(&self) -> u32 {
        self.exponents.len() as u32
    }

    /// Total degree `|n| = sum n_k`.
    pub fn total(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        MultiIndex { exponents: exps }
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.exponents.len() != other.exponents.len() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex { exponents: exps })
    }

    /// The multinomial coefficient `|n|! / prod n_k!`, exactly.
    pub fn multinomial(&self) -> Result<u128> {
        let mut result: u128 = 1;
        let mut partial: u128 = 0;
        for &nk in &self.exponents {
            for j in 1..=(nk as u128) {
                partial += 1;
                // binomial build-up keeps every intermediate an exact integer
                result = result
                    .checked_mul(partial)
                    .ok_or(Error::Overflow("multinomial coefficient"))?
                    / j;
            }
        }
        Ok(result)
    }

    /// The Drury-Arveson monomial weight `||z^n||^2 = n!/|n|! = 1/multinomial(n)`.
    pub fn weight(&self) -> Result<f64> {
        Ok(1.0 / self.multinomial()? as f64)
    }
}

impl Ord for MultiIndex {
    /// Graded-lexicographic on exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

/// Number of words of length at most `max_len` over `d` letters.
pub fn word_count(d: u32, max_len: u32) -> Result<u128> {
    let d = d as u128;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=max_len {
        total = total.checked_add(level).ok_or(Error::Overflow("word count"))?;
        level = level.checked_mul(d).ok_or(Error::Overflow("word count"))?;
    }
    // the loop adds one extra multiplication past the last level; harmless
    Ok(total)
}

/// All words of length at most `max_len` in graded-lexicographic order.
///
/// Rejects parameter pairs whose basis would exceed `cap`.
pub fn enumerate_words(d: u32, max_len: u32, cap: usize) -> Result<Vec<Word>> {
    if d < 1 {
        return Err(Error::InvalidInput("alphabet size d must be >= 1".into()));
    }
    let required = word_count(d, max_len)?;
    if required > cap as u128 {
        return Err(Error::BasisCapExceeded { required, cap });
    }
    let mut out = Vec::with_capacity(required as usize);
    out.push(Word::empty());
    let mut level: Vec<Word> = vec![Word::empty()];
    for _ in 1..=max_len {
        let mut next = Vec::with_capacity(level.len() * d as usize);
        for w in &level {
            for l in 1..=d {
                next.push(w.append(l));
            }
        }
        // children of lexicographically sorted parents are already sorted
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

/// All multi-indices with total degree at most `max_total`, graded-lex order.
pub fn enumerate_multi_indices(d: u32, max_total: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        let mut current = vec![0u32; d as usize];
        fill_compositions(&mut out, &mut current, 0, total);
    }
    out
}

fn fill_compositions(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.clone()));
        current[pos] = 0;
        return;
    }
    // descending first coordinate would break lex order; ascending keeps it
    for v in (0..=remaining).rev() {
        current[pos] = remaining - v;
        fill_compositions(out, current, pos + 1, v);
    }
    current[pos] = 0;
}

/// All words `alpha` with `letter_count(alpha) = n`, in lexicographic order.
/// The list has exactly `multinomial(n)` entries.
pub fn words_with_count(n: &MultiIndex) -> Vec<Word> {
    let mut out = Vec::new();
    let mut remaining = n.exponents().to_vec();
    let mut current: Vec<u32> = Vec::with_capacity(n.total() as usize);
    fill_words(&mut out, &mut current, &mut remaining, n.total() as usize);
    out
}

fn fill_words(out: &mut Vec<Word>, current: &mut Vec<u32>, remaining: &mut [u32], len: usize) {
    if current.len() == len {
        out.push(Word::from_unchecked(current.clone()));
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            current.push(i as u32 + 1);
            fill_words(out, current, remaining, len);
            current.pop();
            remaining[i] += 1;
        }
    }
}
