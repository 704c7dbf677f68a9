//! Crate-wide error type.
//!
//! Every fallible operation in the crate returns [`Error`]. The variants map
//! one-to-one onto the failure modes of the algebra: quantities that are
//! undefined for the zero filter, structural preconditions (irreducibility,
//! structure membership), the validation gates of the factorization engines,
//! and input parsing. The CLI layer maps these onto process exit codes.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An order / support-radius / symmetry query on the zero filter, or a
    /// lifting step built from the zero filter.
    #[error("operation undefined for the zero filter")]
    ZeroFilter,

    /// A conjugation or gain with scale factor 0.
    #[error("scale factor must be nonzero")]
    ZeroScale,

    /// An operation that requires strictly alternating lifting steps was
    /// given a cascade with two consecutive updates on the same channel.
    #[error("cascade is not irreducible: {0}")]
    NotIrreducible(String),

    /// An operation that requires structure membership was given a cascade
    /// outside the requested structure.
    #[error("cascade is not in the requested structure: {0}")]
    NotInStructure(String),

    /// A factorization input whose determinant is not the constant 1.
    #[error("matrix determinant is not the constant 1: {0}")]
    NotUnimodular(String),

    /// A factorization input whose scalar filters are not a whole-sample
    /// symmetric pair in the delay-minimized centering (lowpass about 0,
    /// highpass about -1).
    #[error("not a whole-sample symmetric bank: {0}")]
    NotWsClass(String),

    /// A factorization input whose scalar filters are not a half-sample
    /// symmetric pair centered at -1/2 (lowpass symmetric, highpass
    /// antisymmetric).
    #[error("not a half-sample symmetric bank: {0}")]
    NotHsClass(String),

    /// The peeling loop could not continue: no lifting step reproduces the
    /// current matrix, so the input lies outside the factorable class.
    #[error("factorization failed: {0}")]
    NotFactorable(String),

    /// Normalizing to a unit lowpass DC value when that value is zero.
    #[error("lowpass DC value is zero; cannot normalize to B0(1)=1")]
    DcZero,

    /// An argument outside an operation's documented domain.
    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Malformed or semantically invalid input data (JSON files, flags).
    #[error("parse error: {0}")]
    Parse(String),
}
