//! RSA modulus generation and the fast-exponent shortcut available to the
//! holder of the totient.

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::primes;
use crate::{Error, Result};

/// Minimum prime bit length accepted at all (test profile).
pub const MIN_PRIME_BITS: u32 = 32;

/// Prime bit length for a production profile.
pub const PRODUCTION_PRIME_BITS: u32 = 2048;

/// RSA modulus with its factorization. The modulus alone is the public half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsaKeypair {
    #[serde(with = "crate::ser::hex_big")]
    n: BigUint,
    #[serde(with = "crate::ser::hex_big")]
    phi: BigUint,
    #[serde(with = "crate::ser::hex_big_vec")]
    primes: Vec<BigUint>,
}

impl RsaKeypair {
    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn phi(&self) -> &BigUint {
        &self.phi
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    /// Samples a uniform base in [1, N).
    pub fn rand_base(&self, rng: &mut impl RngCore) -> BigUint {
        use num_bigint::RandBigInt;
        loop {
            let r = rng.gen_biguint_below(&self.n);
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }
}

/// Generates a keypair from two fresh probable primes of `bits` bits each.
pub fn rsa_keygen(bits: u32, rng: &mut impl RngCore) -> Result<RsaKeypair> {
    if bits < MIN_PRIME_BITS {
        return Err(Error::RsaBitsTooSmall(bits));
    }
    let one = BigUint::one();
    let p1 = primes::gen_prime(bits, rng);
    let p2 = loop {
        let candidate = primes::gen_prime(bits, rng);
        if candidate != p1 {
            break candidate;
        }
    };
    let n = &p1 * &p2;
    let phi = (&p1 - &one) * (&p2 - &one);
    Ok(RsaKeypair { n, phi, primes: vec![p1, p2] })
}

/// `base^(2^T) mod N` via exponent reduction mod phi(N); equal to `T`
/// sequential squarings for any base coprime to N.
pub fn trapdoor_power(base: &BigUint, t: u64, keys: &RsaKeypair) -> Result<BigUint> {
    if num_traits::Zero::is_zero(base) || base >= keys.modulus() {
        return Err(Error::BaseOutOfRange);
    }
    let two = BigUint::from(2u32);
    let a = two.modpow(&BigUint::from(t), keys.phi());
    Ok(base.modpow(&a, keys.modulus()))
}
