//! Shared fixtures for unit tests.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::field::{FieldContext, FieldContextBuilder};

/// 2^127 + 45, a 128-bit prime.
pub fn prime_128() -> BigUint {
    (BigUint::one() << 127) + BigUint::from(45u32)
}

/// 2^64 + 13, the smallest prime above the message universe.
pub fn prime_65() -> BigUint {
    (BigUint::one() << 64) + BigUint::from(13u32)
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn ctx_97() -> FieldContext {
    FieldContextBuilder::new()
        .allow_small_primes()
        .build(BigUint::from(97u32), 3, &mut rng(0))
        .unwrap()
}

pub fn ctx_101(tbar: usize) -> FieldContext {
    FieldContextBuilder::new()
        .allow_small_primes()
        .build(BigUint::from(101u32), tbar, &mut rng(0))
        .unwrap()
}

pub fn ctx_128(tbar: usize) -> FieldContext {
    FieldContext::new(prime_128(), tbar, &mut rng(0)).unwrap()
}
