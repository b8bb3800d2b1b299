//! Exact integer machinery for studying triplets of consecutive powerful
//! numbers `(x³ − 1, x³, x³ + 1)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: roots, primality, factorization, gcd and p-adic valuation on `i128`.
//! - [`powerful`]: powerful-number detection, the `a²b³` decomposition and generation.
//! - [`diophantine`]: factor-shape splitting, the `u² ± u + 1 = k·v³` equations,
//!   their Mordell-curve reductions and the cube-difference equations.
//! - [`engine`]: form classifiers, gcd / 3-adic constraints, per-x case traces and
//!   parallel range scans.
//! - [`verify`]: bounded property suites over all of the above.
//!
//! Every routine is a pure function over value data and may be called from any
//! number of threads.

pub mod arith;
pub mod diophantine;
pub mod engine;
mod error;
pub mod powerful;
pub mod verify;

pub use error::{Error, Result};

/// Version string recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
