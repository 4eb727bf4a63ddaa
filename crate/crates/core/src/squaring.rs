//! Instrumented sequential squaring with cooperative cancellation.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

/// How often the cancellation token is polled, in squarings.
pub const CANCEL_STRIDE: u64 = 1 << 16;

/// Shared flag a controller sets to stop long squaring runs.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }
}

/// Result of a squaring run together with the exact number of modular
/// squarings performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaringReport {
    pub result: BigUint,
    pub squarings_performed: u64,
}

/// `base^(2^T) mod n` by `T` repeated squarings, counting each one.
///
/// The cancellation token is polled every [`CANCEL_STRIDE`] squarings; a
/// cancelled run reports how many squarings completed.
pub fn sequential_square(
    base: &BigUint,
    t: u64,
    n: &BigUint,
    cancel: &CancelToken,
) -> Result<SquaringReport> {
    if base.is_zero() || base >= n {
        return Err(Error::BaseOutOfRange);
    }
    let mut acc = base.clone();
    let mut done = 0u64;
    while done < t {
        if done % CANCEL_STRIDE == 0 && cancel.is_cancelled() {
            return Err(Error::Cancelled { completed: done, requested: t });
        }
        acc = (&acc * &acc) % n;
        done += 1;
    }
    Ok(SquaringReport { result: acc, squarings_performed: t })
}
