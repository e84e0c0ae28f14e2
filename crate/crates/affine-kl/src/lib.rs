//! Exact Kazhdan-Lusztig combinatorics for simply-laced affine Weyl groups.
//!
//! The crate computes, in exact integer arithmetic:
//!
//! * root-system and affine Cartan data for types `A_n` (n >= 2), `D_n`
//!   (n >= 4), `E6`, `E7`, `E8` ([`root_data`]);
//! * the affine Weyl group `W^ = Q^v ⋊ W` with lengths, reduced words,
//!   minimal coset representatives `w_gamma` and the subregular-cell
//!   elements `w_i` ([`affine_weyl`]);
//! * the Hecke algebra over `Z[q^±1]`, its canonical (Kazhdan-Lusztig)
//!   basis, inverse KL polynomials, and the anti-spherical module with
//!   parabolic KL polynomials ([`hecke_kl`]);
//! * closed-form multiplicity columns for the subregular cell and the
//!   lattice models they come from ([`subregular`]);
//! * truncated character tables of irreducible highest-weight modules,
//!   with three independent routes that are compared exactly
//!   ([`characters`]).
//!
//! The library is the primary interface; see the `examples/` directory for
//! one runnable program per capability. A thin `affine-kl` binary exposes
//! the same operations as subcommands ([`cli`]).

pub mod affine_weyl;
pub mod characters;
pub mod cli;
pub mod hecke_kl;
pub mod laurent;
pub mod root_data;
pub mod subregular;

/// Crate-wide error type. Every variant carries a stable machine-readable
/// code used by the CLI (see [`Error::code`]).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported type label: {0}")]
    UnsupportedType(String),
    #[error("mismatched Cartan data: {0} vs {1}")]
    MismatchedDatum(String, String),
    #[error("computation cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid (lambda, i) pair: {0}")]
    InvalidPair(String),
    #[error("index outside configured window: {0}")]
    WindowExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedType(_) => "unsupported_type",
            Error::MismatchedDatum(..) => "mismatched_datum",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::InvalidWeight(_) => "invalid_weight",
            Error::InvalidPair(_) => "invalid_pair",
            Error::WindowExceeded(_) => "window_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::VerificationFailed(_) => "verification_failed",
            Error::Io(_) => "io_error",
        }
    }

    /// Process exit code class: 1 usage, 2 cap, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) | Error::WindowExceeded(_) => 2,
            Error::VerificationFailed(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
