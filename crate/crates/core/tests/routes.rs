//! Cross-checks between the two factorization routes and the classical
//! one-variable picture.

mod common;

use common::{poly_from_roots, tame_poly};
use num_complex::Complex64;
use pickfactor::beurling::{check_cyclic, factor_sequence, FactorConfig};
use pickfactor::fock::FreeVector;
use pickfactor::mult::{column_norm, MultTuple};
use pickfactor::symfock::{lift_min_norm, mult_sym, SymVector};
use pickfactor::words::enumerate_words;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The explicit Fock route and the symmetric route are two implementations of
/// the same projection; their commutative outputs must agree.
#[test]
fn free_and_symmetric_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let free_cfg = FactorConfig { max_free_basis: 1 << 20, ..FactorConfig::default() };
    let sym_cfg = FactorConfig { max_free_basis: 0, ..FactorConfig::default() };

    for trial in 0..12 {
        let d = if trial % 2 == 0 { 1 } else { 2 };
        let degree = rng.random_range(1..=3);
        let n = rng.random_range(1..=3);
        let fs: Vec<SymVector> = (0..n).map(|_| tame_poly(&mut rng, d, degree, 0.25)).collect();
        let dm = degree + 2;

        let free = factor_sequence(&fs, dm, &free_cfg).expect("free route");
        let sym = factor_sequence(&fs, dm, &sym_cfg).expect("symmetric route");

        for (a, b) in free.phi.iter().zip(&sym.phi) {
            let diff = a.sub(b).unwrap().da_norm();
            assert!(diff < 1e-9, "trial {trial}: phi mismatch {diff}");
        }
        let diff = free.big_f.sub(&sym.big_f).unwrap().da_norm();
        assert!(diff < 1e-8, "trial {trial}: F mismatch {diff}");
        assert!(
            (free.diagnostics.wandering_gap - sym.diagnostics.wandering_gap).abs() < 1e-10,
            "trial {trial}: gap mismatch"
        );
    }
}

/// Reconstruction residuals do not increase when the shift depth grows.
#[test]
fn residual_monotone_in_depth() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let config = FactorConfig::default();
    for _ in 0..5 {
        let fs: Vec<SymVector> = (0..2).map(|_| tame_poly(&mut rng, 2, 2, 0.2)).collect();
        let mut previous = f64::INFINITY;
        for dm in 2..=5 {
            let out = factor_sequence(&fs, dm, &config).unwrap();
            assert!(
                out.diagnostics.max_residual <= previous + 1e-12,
                "residual grew from {previous} to {}",
                out.diagnostics.max_residual
            );
            previous = out.diagnostics.max_residual;
        }
    }
}

/// The free column multiplier read off the wandering vector is isometric on
/// basis vectors of interior degree.
#[test]
fn column_multiplier_near_isometric_on_interior() {
    use pickfactor::beurling::{
        extract_column_multiplier, generate_invariant_subspace, wandering_subspace, ColumnTuple,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let config = FactorConfig::default();
    for _ in 0..5 {
        let degree = 2u32;
        let dm = degree + 2;
        let d_amb = degree + dm;
        let fs: Vec<SymVector> = (0..2).map(|_| tame_poly(&mut rng, 2, degree, 0.08)).collect();
        let lifts: Vec<FreeVector> = fs
            .iter()
            .map(|f| lift_min_norm(&f.with_degree(d_amb).unwrap(), 100_000).unwrap())
            .collect();
        let ft = ColumnTuple::new(lifts).unwrap();
        let basis = generate_invariant_subspace(&ft, dm, &config).unwrap();
        let (w, _) = wandering_subspace(&basis, &ft, &config).unwrap();
        let phi = extract_column_multiplier(&w).unwrap();
        for word in enumerate_words(2, d_amb - dm, 100_000).unwrap() {
            let xi = FreeVector::basis_vector(2, d_amb, word).unwrap();
            let image_norm_sq: f64 = phi
                .iter()
                .map(|p| p.apply(&xi).unwrap().0.norm_sq())
                .sum();
            assert!(
                (image_norm_sq.sqrt() - 1.0).abs() < 1e-8,
                "column image norm {} off unity",
                image_norm_sq.sqrt()
            );
        }
    }
}

/// For d = 1 the pipeline reproduces the classical inner-outer split:
/// roots inside the disk give a unimodular-symbol multiplier, roots outside
/// give a cyclic (outer) factor equal to the input up to a constant.
#[test]
fn classical_inner_outer_d1() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let config = FactorConfig::default();

    // all roots strictly inside
    for _ in 0..4 {
        let k = rng.random_range(1..=2);
        let roots: Vec<Complex64> = (0..k)
            .map(|_| {
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                let radius = rng.random_range(0.05..0.3);
                Complex64::new(radius * angle.cos(), radius * angle.sin())
            })
            .collect();
        let f = poly_from_roots(&roots, k);
        let dm = 14;
        let out = factor_sequence(std::slice::from_ref(&f), dm, &config).unwrap();
        // phi inner: ||phi z^j|| = ||z^j|| and multiplier norm 1
        let phi = &out.phi[0];
        assert!((phi.da_norm() - 1.0).abs() < 1e-8, "phi l2 norm {}", phi.da_norm());
        for j in 0..=2u32 {
            let zj = SymVector::monomial(1, j, pickfactor::words::MultiIndex::new(vec![j]), c(1.0))
                .unwrap();
            let prod = mult_sym(phi, &zj, phi.actual_degree() + j).unwrap();
            assert!((prod.da_norm() - 1.0).abs() < 1e-8);
        }
        let bound = column_norm(&MultTuple::new(vec![phi.clone()]).unwrap(), 10).unwrap();
        assert!(bound <= 1.0 + 1e-6, "inner factor multiplier bound {bound}");
        // F outer: cyclic residual decays
        let residual = check_cyclic(&out.big_f, 12).unwrap();
        assert!(residual < 1e-4, "outer factor cyclic residual {residual}");
        // reconstruction
        assert!(out.diagnostics.max_residual < 1e-9);
    }

    // all roots strictly outside: the input is already outer
    for _ in 0..4 {
        let k = rng.random_range(1..=2);
        let roots: Vec<Complex64> = (0..k)
            .map(|_| {
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                let radius = rng.random_range(3.0..5.0);
                Complex64::new(radius * angle.cos(), radius * angle.sin())
            })
            .collect();
        let f = poly_from_roots(&roots, k);
        let dm = 14;
        let out = factor_sequence(std::slice::from_ref(&f), dm, &config).unwrap();
        let phi = &out.phi[0];
        // multiplier symbol is a unimodular constant up to truncation dust
        let phi0 = phi.coeff(&pickfactor::words::MultiIndex::new(vec![0]));
        assert!((phi0.norm() - 1.0).abs() < 1e-4, "|phi(0)| = {}", phi0.norm());
        let residual = check_cyclic(&out.big_f, 12).unwrap();
        assert!(residual < 1e-4, "outer input cyclic residual {residual}");
        assert!(out.diagnostics.max_residual < 1e-9);
    }
}

/// Truncation-boundary mass reported by creation operators shows up exactly
/// where the degree guard predicts.
#[test]
fn generator_shifts_stay_exact_at_guarded_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = tame_poly(&mut rng, 2, 3, 0.3);
    let dm = 3;
    let lift = lift_min_norm(&f.with_degree(3 + dm).unwrap(), 100_000).unwrap();
    for word in enumerate_words(2, dm, 10_000).unwrap() {
        let (_, lost) = lift.apply_word(&word, pickfactor::fock::Side::Right).unwrap();
        assert_eq!(lost, 0.0);
    }
}
