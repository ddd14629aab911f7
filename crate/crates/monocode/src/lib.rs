//! Monomial codes over finite fields, viewed as invariant subspaces of
//! monomial matrices.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf`]: exact arithmetic in `F_q`, `q = p^m`
//! - [`poly`]: dense univariate polynomials over `F_q`, with full
//!   irreducible factorization
//! - [`linalg`]: dense matrices, RREF, kernels and subspace arithmetic
//! - [`monomial`]: simple and general monomial matrices, permutations,
//!   closed-form powers, companion similarity, eigenvectors
//! - [`codes`]: decomposition of `F_q^n` into minimal invariant subspaces
//!   and the monomial codes built from them
//! - [`structure`]: centralizers, hyperinvariant/characteristic subspace
//!   certification, cycle-block decomposition of generalized codes
//! - [`json`]: stable JSON forms for matrices, codes and reports

pub mod codes;
pub mod gf;
pub mod json;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod structure;

use std::fmt;

/// Errors surfaced by fallible operations. Dimension and field mismatches
/// between values that the caller constructed consistently are treated as
/// programmer errors and panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not a prime number.
    NotPrime(u64),
    /// Extension degree `m` must be at least 1.
    BadExtensionDegree(u32),
    /// `p^m` exceeds the supported bound.
    FieldTooLarge { p: u64, m: u32 },
    /// Division by zero in `F_q` or by the zero polynomial.
    DivisionByZero,
    /// The zero polynomial has no factorization or squarefree test.
    ZeroPolynomial,
    /// A monomial matrix coefficient is zero.
    ZeroCoefficient { index: usize },
    /// One-line or cycle data does not describe a permutation.
    BadPermutation(String),
    /// Closed-form operation restricted to simple monomial matrices.
    NotSimple,
    /// The characteristic polynomial has a repeated irreducible factor,
    /// so the minimal-component decomposition does not apply.
    RepeatedFactor {
        factor: String,
        multiplicity: usize,
        detail: String,
    },
    /// A component index outside the decomposition.
    BadSelection { index: usize, count: usize },
    /// Enumeration guard: too many components for subset enumeration.
    TooManyComponents { count: usize, limit: usize },
    /// Distance guard: message space too large for exhaustive search.
    DistanceTooLarge { k: usize, q: u64 },
    /// The zero code has no nonzero codeword, hence no minimum distance.
    ZeroCode,
    /// A vector or message has the wrong length.
    LengthMismatch { expected: usize, found: usize },
    /// The subspace is not invariant under the given matrix.
    NotInvariant,
    /// Cycle components do not sum back to the input code.
    DecompositionFailed(String),
    /// Two blocks share a factor of their characteristic polynomials.
    NotCoprime { i: usize, j: usize, gcd: String },
    /// Text input rejected; `position` is the byte offset of `token`.
    Parse {
        context: String,
        token: String,
        position: usize,
    },
}

impl Error {
    /// Guards that exist to bound resource use rather than to report a
    /// violated mathematical precondition.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::TooManyComponents { .. } | Error::DistanceTooLarge { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadExtensionDegree(m) => {
                write!(f, "extension degree must be >= 1, got {m}")
            }
            Error::FieldTooLarge { p, m } => {
                write!(f, "field F_{p}^{m} exceeds the 2^16 size bound")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::ZeroCoefficient { index } => {
                write!(f, "monomial coefficient a_{index} is zero")
            }
            Error::BadPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::NotSimple => {
                write!(f, "operation is defined only for simple monomial matrices")
            }
            Error::RepeatedFactor {
                factor,
                multiplicity,
                detail,
            } => write!(
                f,
                "characteristic polynomial has repeated factor ({factor})^{multiplicity}; {detail}"
            ),
            Error::BadSelection { index, count } => {
                write!(f, "component index {index} out of range (have {count})")
            }
            Error::TooManyComponents { count, limit } => {
                write!(
                    f,
                    "{count} components exceed the enumeration limit of {limit}"
                )
            }
            Error::DistanceTooLarge { k, q } => write!(
                f,
                "message space q^k = {q}^{k} too large for exhaustive distance"
            ),
            Error::ZeroCode => write!(f, "the zero code has no minimum distance"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, got {found}")
            }
            Error::NotInvariant => write!(f, "subspace is not invariant under the matrix"),
            Error::DecompositionFailed(msg) => write!(f, "decomposition failed: {msg}"),
            Error::NotCoprime { i, j, gcd } => write!(
                f,
                "blocks {i} and {j} have non-coprime characteristic polynomials (gcd {gcd})"
            ),
            Error::Parse {
                context,
                token,
                position,
            } => {
                write!(
                    f,
                    "cannot parse {context}: bad token {token:?} at position {position}"
                )
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
