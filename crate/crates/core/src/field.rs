//! Prime-field context: the modulus `p`, the public x-coordinates and the
//! modular arithmetic every other module leans on.
//!
//! Dense polynomials and raw `BigUint` elements carry no implicit modulus;
//! every operation takes the [`FieldContext`] explicitly so values from
//! different fields cannot be mixed silently.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::primes;
use crate::{Error, Result};

/// Number of x-coordinates used by the single-client scheme.
pub const MIN_COORDINATES: usize = 3;

/// Default lower bound on `log2(p)`.
pub const DEFAULT_MIN_PRIME_BITS: u64 = 128;

/// Exclusive upper bound of the message universe: messages are 64-bit values.
pub fn universe_bound() -> BigUint {
    BigUint::one() << 64
}

/// Prime modulus, ordered public x-coordinates and their count.
///
/// The x-coordinates follow a fixed deterministic rule: the `i`-th coordinate
/// is `(2^64 + 1 + i) mod p`, skipping values that are zero, repeated, or
/// (when `p > 2^64`) inside the message universe. For realistic `p` no
/// skipping ever occurs and every coordinate sits outside the universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldContext {
    #[serde(with = "crate::ser::hex_big")]
    p: BigUint,
    #[serde(with = "crate::ser::hex_big_vec")]
    xs: Vec<BigUint>,
    tbar: usize,
}

/// Configures [`FieldContext`] construction.
#[derive(Debug, Clone)]
pub struct FieldContextBuilder {
    min_prime_bits: u64,
}

impl Default for FieldContextBuilder {
    fn default() -> Self {
        Self { min_prime_bits: DEFAULT_MIN_PRIME_BITS }
    }
}

impl FieldContextBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Permits primes below 128 bits. Unsafe for production: a small field
    /// voids every hiding and unforgeability guarantee. Intended only for
    /// oracle tests that need to enumerate the field.
    pub fn allow_small_primes(mut self) -> Self {
        self.min_prime_bits = 2;
        self
    }

    pub fn build(&self, p: BigUint, tbar: usize, rng: &mut impl RngCore) -> Result<FieldContext> {
        if tbar < MIN_COORDINATES {
            return Err(Error::TooFewCoordinates(tbar));
        }
        if p.bits() < self.min_prime_bits {
            return Err(Error::PrimeTooSmall { got: p.bits(), need: self.min_prime_bits });
        }
        if !primes::is_probable_prime(&p, rng) {
            return Err(Error::NotPrime);
        }
        if p <= BigUint::from(tbar) {
            return Err(Error::FieldTooSmall { tbar });
        }
        let umax = universe_bound();
        let check_universe = p > umax;
        let mut xs: Vec<BigUint> = Vec::with_capacity(tbar);
        let mut k = BigUint::zero();
        let budget = BigUint::from(tbar as u64) + &umax.clone().min(p.clone());
        while xs.len() < tbar {
            let candidate = (&umax + BigUint::one() + &k) % &p;
            k += BigUint::one();
            if candidate.is_zero() || xs.contains(&candidate) {
                continue;
            }
            if check_universe && candidate < umax {
                continue;
            }
            xs.push(candidate);
            if k > budget {
                return Err(Error::FieldTooSmall { tbar });
            }
        }
        Ok(FieldContext { p, xs, tbar })
    }
}

impl FieldContext {
    /// Context with the production bound `log2(p) >= 128`.
    pub fn new(p: BigUint, tbar: usize, rng: &mut impl RngCore) -> Result<Self> {
        FieldContextBuilder::new().build(p, tbar, rng)
    }

    pub fn prime(&self) -> &BigUint {
        &self.p
    }

    pub fn xs(&self) -> &[BigUint] {
        &self.xs
    }

    pub fn tbar(&self) -> usize {
        self.tbar
    }

    /// Leader capacity of this context: `tbar - 2`.
    pub fn tddot(&self) -> usize {
        self.tbar - 2
    }

    pub fn reduce(&self, v: &BigUint) -> BigUint {
        v % &self.p
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.p
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        ((a % &self.p) + &self.p - (b % &self.p)) % &self.p
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        let r = a % &self.p;
        if r.is_zero() {
            r
        } else {
            &self.p - r
        }
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }

    pub fn pow(&self, a: &BigUint, e: &BigUint) -> BigUint {
        a.modpow(e, &self.p)
    }

    /// Multiplicative inverse of a nonzero element, via Fermat.
    pub fn inv(&self, a: &BigUint) -> BigUint {
        debug_assert!(!a.is_zero(), "zero has no inverse");
        let e = &self.p - BigUint::from(2u32);
        a.modpow(&e, &self.p)
    }

    pub fn rand_element(&self, rng: &mut impl RngCore) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }

    /// True when `v` lies inside the message universe.
    pub fn in_universe(&self, v: &BigUint) -> bool {
        *v < universe_bound() && *v < self.p
    }
}
