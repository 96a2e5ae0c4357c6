//! Linear codes over the rings `Z_{2^m}` and the self-dual codes one can
//! build from their shadows.
//!
//! The crate covers the full pipeline:
//!
//! * exact arithmetic over `Z_{2^m}` ([`zring`]),
//! * canonical generator matrices, duals and Type I / Type II
//!   classification ([`lincode`]),
//! * shadow and generalized-shadow coset decompositions together with the
//!   orthogonality and weight-congruence checks ([`shadow`]),
//! * the coset extension engine that assembles longer self-dual codes from
//!   a decomposition plus a small table of glue vectors ([`builder`]),
//! * complete weight enumerators, computed both by direct enumeration and
//!   by the closed-form coset sums, with exact comparison ([`cwe`]),
//! * numeric theta series and Jacobi transformation-law checks for the
//!   Type II results ([`jacobi`]),
//! * a corpus verification pipeline that runs everything end to end
//!   ([`verify`]).
//!
//! Heavy inner loops (pair scans, codeword tallies, theta sums) run on
//! rayon when the `parallel` feature is enabled (default) and fall back to
//! sequential loops otherwise; results are bit-identical either way.

pub mod builder;
pub mod cwe;
mod error;
pub mod exec;
pub mod format;
pub mod jacobi;
pub mod lincode;
pub mod shadow;
pub mod verify;
pub mod zring;

pub use error::Error;
pub use lincode::{LinearCode, TypeVerdict, DEFAULT_ENUM_CAP};
pub use zring::{RingParams, RingVector};

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
