//! Constructive factorization machinery for Drury-Arveson and complete
//! Nevanlinna-Pick spaces at finite truncation.
//!
//! The crate models the truncated full Fock space over `d` letters together
//! with its symmetrization, the truncated Drury-Arveson space on the unit
//! ball. On top of that it builds two pipelines:
//!
//! * [`beurling::factor_sequence`] takes a finite sequence `(f_n)` of
//!   polynomials, lifts it to Fock space, extracts the wandering vector of
//!   the right-shift invariant subspace it generates, and returns a
//!   contractive column multiplier `(phi_n)` together with a cyclic factor
//!   `F` with `f_n = phi_n F`.
//! * [`weakprod::factor_weak_product`] takes a finite weak-product
//!   representation `h = sum f_i g_i`, balances it, runs the sequence
//!   factorization on both legs, and assembles a single product `h = f g`
//!   with `f = m F`, `g = G`, `m = sum phi_i psi_i`.
//!
//! [`cnp`] transports both pipelines to spaces sampled through an embedding
//! of finitely many points into the unit ball, and [`mult`] provides the
//! truncated multiplier-norm and Pick-matrix certificates used throughout.
//!
//! All reported operator norms are truncation lower bounds; nothing here
//! claims certified multiplier norms at infinite degree.

pub mod beurling;
pub mod cnp;
pub mod error;
pub mod fock;
mod linalg;
pub mod mult;
pub mod symfock;
pub mod weakprod;
pub mod words;

pub use error::{Error, Result};
pub use fock::{FreePoly, FreeVector, Side};
pub use symfock::SymVector;
pub use words::{MultiIndex, Word};

/// Default cap on the number of enumerated basis words; `(d, D)` pairs whose
/// graded basis would exceed this are rejected instead of exhausting memory.
pub const DEFAULT_BASIS_CAP: usize = 200_000;

#[cfg(test)]
mod concurrency {
    // every value type is immutable after construction and safe to share
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn value_types_are_send_sync() {
        assert_send_sync::<crate::Word>();
        assert_send_sync::<crate::MultiIndex>();
        assert_send_sync::<crate::FreeVector>();
        assert_send_sync::<crate::FreePoly>();
        assert_send_sync::<crate::SymVector>();
        assert_send_sync::<crate::beurling::ColumnTuple>();
        assert_send_sync::<crate::beurling::FactorizationT1>();
        assert_send_sync::<crate::weakprod::WeakProductRep>();
        assert_send_sync::<crate::cnp::CnpSpace>();
        assert_send_sync::<crate::cnp::SampledFunction>();
    }
}
