//! Exact symbolic-numeric toolkit for the renormalized-area expansion and the
//! Graham-Witten energy of even-dimensional minimal submanifolds in Einstein
//! manifolds.
//!
//! Everything symbolic runs over arbitrary-precision rationals; floating point
//! appears only in the quadrature cross-check of [`renorm::numeric_extract`].
//!
//! Module map:
//! - [`exact`]: rational scalars, the constants `c_k`, and the bivariate
//!   polynomial ring `Q[x, lambda]` (`x` stands for the Jacobi operator).
//! - [`series`]: truncated even power series in the boundary-defining variable
//!   `r` with a single `r^{2k+2} log r` slot.
//! - [`renorm`]: the closed-form area expansion, the energy formula, and the
//!   floating-point coefficient re-extraction.
//! - [`jacobi`]: the formal boundary value problem for the Jacobi operator,
//!   producing the log-coefficient polynomial `p_k` two independent ways.
//! - [`spectra`]: second-variation spectra on totally geodesic spheres and
//!   Clifford hypersurfaces in the round sphere.
//! - [`cli`]: structured output records behind the `gwe` binary.

pub mod cli;
pub mod exact;
pub mod jacobi;
pub mod renorm;
pub mod series;
pub mod spectra;

pub use exact::{BiPoly, Rat};

/// Errors surfaced to callers; internal consistency violations panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The least-squares coefficient extraction could not be carried out.
    #[error("fit error: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
