//! Multi-instance verifiable partially homomorphic time-lock puzzles.
//!
//! A client chains `z` puzzles so a server solves them sequentially: solving
//! puzzle `j` yields the master key that seeds the base of puzzle `j+1`, so
//! the total work is one pass over the longest horizon instead of the sum of
//! all horizons. Solutions are encoded as point-value polynomials over a
//! prime field, which lets the server compute verifiable homomorphic linear
//! combinations of the encrypted solutions — for one client
//! ([`mhtlp`]) or across many clients ([`mmhtlp`]) — without learning
//! anything before the scheduled time. Anyone can verify solutions and
//! combination results against hash commitments.
//!
//! The [`harness`] module provides an in-process bulletin board, a scenario
//! runner and squaring-rate calibration; the `tlp` binary in the companion
//! CLI crate exposes the same operations on JSON artifacts.

pub mod baseline;
pub mod commit;
pub mod error;
pub mod field;
pub mod harness;
pub mod mhtlp;
pub mod mmhtlp;
pub mod ole;
pub mod poly;
pub mod prf;
mod primes;
pub mod rsa;
pub mod ser;
pub mod squaring;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use field::FieldContext;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
