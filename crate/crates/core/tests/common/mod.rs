//! Shared generators for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use num_complex::Complex64;
use pickfactor::symfock::SymVector;
use pickfactor::words::{enumerate_multi_indices, MultiIndex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random polynomial with geometrically decaying coefficients: the constant
/// term has magnitude near 1 and every coefficient of total degree `k` is
/// bounded by `0.4 * sqrt(2) * decay^k`. All roots then stay far outside the
/// closed ball, which keeps wandering-vector truncation tails far below the
/// pipeline tolerances at shift depth `deg + 2`.
pub fn tame_poly(rng: &mut ChaCha8Rng, d: u32, degree: u32, decay: f64) -> SymVector {
    let mut h = SymVector::zero(d, degree);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    let magnitude = rng.random_range(0.7..1.3);
    let constant = Complex64::new(magnitude * angle.cos(), magnitude * angle.sin());
    h = h.add(&SymVector::constant(d, degree, constant)).unwrap();
    for n in enumerate_multi_indices(d, degree) {
        if n.is_zero() {
            continue;
        }
        let scale = 0.4 * decay.powi(n.total() as i32);
        let coeff = Complex64::new(
            rng.random_range(-1.0..1.0) * scale,
            rng.random_range(-1.0..1.0) * scale,
        );
        h = h
            .add(&SymVector::monomial(d, degree, n.clone(), coeff).unwrap())
            .unwrap();
    }
    // force full degree so the depth schedule deg + 2 means what it says
    let top = MultiIndex::new((0..d).map(|i| if i == 0 { degree } else { 0 }).collect());
    if degree > 0 && h.coeff(&top).norm() < 1e-3 * decay.powi(degree as i32) {
        let bump = Complex64::new(0.2 * decay.powi(degree as i32), 0.0);
        h = h.add(&SymVector::monomial(d, degree, top, bump).unwrap()).unwrap();
    }
    h
}

/// An unrestrained random polynomial (coefficients uniform in the unit box).
pub fn wild_poly(rng: &mut ChaCha8Rng, d: u32, degree: u32) -> SymVector {
    let mut h = SymVector::zero(d, degree);
    for n in enumerate_multi_indices(d, degree) {
        let coeff = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        h = h.add(&SymVector::monomial(d, degree, n, coeff).unwrap()).unwrap();
    }
    h
}

/// Monic polynomial in one variable with the given roots, as a `SymVector`.
pub fn poly_from_roots(roots: &[Complex64], cap: u32) -> SymVector {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    SymVector::from_terms(
        1,
        cap,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (MultiIndex::new(vec![k as u32]), c)),
    )
    .unwrap()
}
