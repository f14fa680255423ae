//! Numerics for average Goldbach representations and the explicit formula.
//!
//! The library computes both sides of the average-Goldbach identity: the
//! prime side by sieving the von Mangoldt function and convolving it with
//! itself, and the zero side from ingested tables of Riemann zeta zeros.
//! Around that core identity it evaluates the associated prime-variance
//! integrals (`H`, `J`, `calJ`), Montgomery's pair-correlation form factor
//! `F(x,T)`, and the exponential-sum majorants obtained by DFT-grid
//! quadrature, so that the exact identities can be verified numerically and
//! the conditional bounds can be constant-fitted at desk scale.
//!
//! Modules map onto the main objects:
//!
//! - [`sieve`]: Λ(n), ψ(x), ψ₁(x), R(u) as exact reusable tables
//! - [`goldbach`]: ψ₂(n) self-convolutions, cumulative sums, the exact
//!   error term E(N), and the full identity breakdown
//! - [`zeros`]: zero-table ingestion, zero-counting checks, truncated zero
//!   sums (Fujii, ψ₁, Landau, short intervals)
//! - [`variance`]: exact piecewise evaluation of H(x), J(x,h), 𝒥(x,δ) and
//!   the Saffari-Vaughan inequality
//! - [`paircorr`]: Montgomery's F(x,T), its main term, and G(x,δ)
//! - [`expsum`]: DFT-grid quadrature for ℰ(N) and 𝒲(N,h) and the prime
//!   number theorem error check
//!
//! All tables are immutable after construction and every evaluation is a
//! pure function, so grids may be evaluated in any order.

pub mod error;
pub mod expsum;
pub mod goldbach;
pub mod paircorr;
pub mod sieve;
pub mod util;
pub mod variance;
pub mod zeros;

pub use error::{Error, Result};
pub use sieve::LambdaTable;
pub use zeros::ZeroTable;
