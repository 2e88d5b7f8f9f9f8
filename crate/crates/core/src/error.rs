//! Error type shared by all modules.

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("letter {letter} out of range for alphabet size {d}")]
    LetterOutOfRange { letter: u32, d: u32 },

    #[error("word of length {len} exceeds the degree cap {cap}")]
    DegreeExceeded { len: usize, cap: u32 },

    #[error("graded basis would need {required} elements, exceeding the cap {cap}")]
    BasisCapExceeded { required: u128, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("point lies outside the open unit ball (norm {norm})")]
    PointOutsideBall { norm: f64 },

    #[error("embedded points coincide or are closer than the separation floor (distance {sep:e})")]
    CoincidentPoints { sep: f64 },

    #[error("wandering gap {gap:e} below tolerance {tol:e}; increase Dm or the ambient degree")]
    GapBelowTolerance { gap: f64, tol: f64 },

    #[error("ill-conditioned system: {0}")]
    IllConditioned(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
