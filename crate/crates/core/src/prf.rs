//! Keyed pseudorandom function into F_p.
//!
//! HMAC-SHA-256 in counter mode: enough 32-byte blocks are concatenated to
//! cover `log2(p) + 128` bits, then the value is reduced mod p, keeping the
//! statistical distance from uniform below 2^-128.
//!
//! Input encodings are normative and bit-exact:
//!
//! * coordinate inputs: `0x01 || i` with `i` as 8 big-endian bytes;
//! * base-derivation inputs: `0x02 || j || 0x00` (the trailing zero byte
//!   keeps these disjoint from every other use of the index `j`);
//! * key-derivation inputs: `0x03 || idx` with `idx` in {1, 2}.
//!
//! A ring or field element adopted as key material is encoded as its minimal
//! big-endian bytes prefixed with a 4-byte big-endian length.

use hmac::{Hmac, Mac};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::Sha256;

use crate::field::FieldContext;
use crate::{Error, Result};

type HmacSha256 = Hmac<Sha256>;

/// Domain separation tag for PRF inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    /// Blinding factors indexed by coordinate: tag byte 0x01.
    Coord,
    /// Next-base derivation from a master key: tag byte 0x02.
    Base,
    /// Key derivation (index 1 or 2) from a master or temporary key: 0x03.
    Kdf,
}

impl Label {
    fn tag(self) -> u8 {
        match self {
            Label::Coord => 0x01,
            Label::Base => 0x02,
            Label::Kdf => 0x03,
        }
    }
}

/// PRF key material.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrfKey {
    #[serde(with = "crate::ser::hex_bytes")]
    material: Vec<u8>,
}

impl PrfKey {
    /// Adopts raw bytes (e.g. a sampled 32-byte key) as key material.
    pub fn from_bytes(material: Vec<u8>) -> Self {
        assert!(!material.is_empty(), "PRF key must be non-empty");
        Self { material }
    }

    /// Canonical encoding of a ring or field element as key material:
    /// 4-byte big-endian length, then minimal big-endian bytes.
    pub fn from_element(v: &BigUint) -> Self {
        let bytes = v.to_bytes_be();
        let mut material = Vec::with_capacity(4 + bytes.len());
        material.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
        material.extend_from_slice(&bytes);
        Self { material }
    }

    pub fn material(&self) -> &[u8] {
        &self.material
    }
}

/// Byte encoding of a PRF input. Injective: the tag fixes the layout and
/// every layout has a fixed length.
pub fn encode_input(label: Label, index: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(10);
    out.push(label.tag());
    out.extend_from_slice(&index.to_be_bytes());
    if label == Label::Base {
        out.push(0x00);
    }
    out
}

fn expand(key: &PrfKey, input: &[u8], ctx: &FieldContext) -> BigUint {
    let blocks = (ctx.prime().bits() + 128).div_ceil(256);
    let mut bytes = Vec::with_capacity(32 * blocks as usize);
    for counter in 0..blocks as u32 {
        let mut mac = HmacSha256::new_from_slice(key.material()).expect("any key length works");
        mac.update(input);
        mac.update(&counter.to_be_bytes());
        bytes.extend_from_slice(&mac.finalize().into_bytes());
    }
    ctx.reduce(&BigUint::from_bytes_be(&bytes))
}

/// Deterministic pseudorandom element of F_p.
pub fn prf(label: Label, index: u64, key: &PrfKey, ctx: &FieldContext) -> BigUint {
    expand(key, &encode_input(label, index), ctx)
}

/// As [`prf`] but never zero: on a zero output the input is extended with a
/// retry byte (1, 2, ...) and resampled, giving an invertible output.
pub fn prf_nonzero(label: Label, index: u64, key: &PrfKey, ctx: &FieldContext) -> Result<BigUint> {
    prf_nonzero_inner(label, index, key, ctx, false)
}

/// Test hook: `force_zero_first` discards the plain sample as if it were
/// zero, exercising the retry path.
pub(crate) fn prf_nonzero_inner(
    label: Label,
    index: u64,
    key: &PrfKey,
    ctx: &FieldContext,
    force_zero_first: bool,
) -> Result<BigUint> {
    let first = prf(label, index, key, ctx);
    if !first.is_zero() && !force_zero_first {
        return Ok(first);
    }
    let base = encode_input(label, index);
    for retry in 1u8..=255 {
        let mut input = base.clone();
        input.push(retry);
        let v = expand(key, &input, ctx);
        if !v.is_zero() {
            return Ok(v);
        }
    }
    Err(Error::SamplingExhausted)
}

/// Raw keystream bytes under `key`, for the symmetric layer of the baseline
/// puzzle. Counter-mode HMAC over the fixed tag byte 0x04.
pub fn prf_keystream(key: &PrfKey, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let mut counter = 0u32;
    while out.len() < len {
        let mut mac = HmacSha256::new_from_slice(key.material()).expect("any key length works");
        mac.update(&[0x04]);
        mac.update(&counter.to_be_bytes());
        out.extend_from_slice(&mac.finalize().into_bytes());
        counter += 1;
    }
    out.truncate(len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ctx_128, ctx_97};

    fn key(byte: u8) -> PrfKey {
        PrfKey::from_bytes(vec![byte; 32])
    }

    #[test]
    fn deterministic() {
        let ctx = ctx_128(3);
        let k = key(1);
        assert_eq!(prf(Label::Coord, 1, &k, &ctx), prf(Label::Coord, 1, &k, &ctx));
    }

    #[test]
    fn distinct_indices_differ() {
        let ctx = ctx_128(3);
        let k = key(1);
        assert_ne!(prf(Label::Coord, 1, &k, &ctx), prf(Label::Coord, 2, &k, &ctx));
        assert_ne!(prf(Label::Coord, 1, &k, &ctx), prf(Label::Kdf, 1, &k, &ctx));
        assert_ne!(prf(Label::Base, 1, &k, &ctx), prf(Label::Coord, 1, &k, &ctx));
    }

    #[test]
    fn encoding_is_injective_across_labels_and_indices() {
        let mut seen = std::collections::HashSet::new();
        for label in [Label::Coord, Label::Base, Label::Kdf] {
            for index in [0u64, 1, 2, 255, 256, u64::MAX] {
                assert!(seen.insert(encode_input(label, index)));
            }
        }
    }

    #[test]
    fn base_encoding_carries_trailing_zero() {
        assert_eq!(
            encode_input(Label::Base, 3),
            vec![0x02, 0, 0, 0, 0, 0, 0, 0, 3, 0x00]
        );
        assert_eq!(encode_input(Label::Coord, 3), vec![0x01, 0, 0, 0, 0, 0, 0, 0, 3]);
    }

    #[test]
    fn nonzero_fast_path_matches_prf() {
        let ctx = ctx_97();
        let k = key(2);
        for i in 1..=20u64 {
            let plain = prf(Label::Coord, i, &k, &ctx);
            if !plain.is_zero() {
                assert_eq!(prf_nonzero(Label::Coord, i, &k, &ctx).unwrap(), plain);
            }
        }
    }

    #[test]
    fn nonzero_outputs_are_nonzero() {
        let ctx = ctx_97();
        let k = key(3);
        for i in 1..=200u64 {
            assert!(!prf_nonzero(Label::Coord, i, &k, &ctx).unwrap().is_zero());
        }
    }

    #[test]
    fn forced_zero_first_sample_takes_retry_one() {
        let ctx = ctx_97();
        let k = key(4);
        let forced = prf_nonzero_inner(Label::Coord, 1, &k, &ctx, true).unwrap();
        let mut input = encode_input(Label::Coord, 1);
        input.push(1);
        let direct = expand(&k, &input, &ctx);
        // retry 1 lands on a nonzero value for this key, so it is returned
        assert!(!direct.is_zero());
        assert_eq!(forced, direct);
    }

    #[test]
    fn element_keys_are_length_prefixed() {
        let k = PrfKey::from_element(&BigUint::from(0x0102u32));
        assert_eq!(k.material(), &[0, 0, 0, 2, 0x01, 0x02]);
    }

    #[test]
    fn keystream_is_deterministic_and_sized() {
        let k = key(5);
        let a = prf_keystream(&k, 100);
        let b = prf_keystream(&k, 100);
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert_ne!(a, prf_keystream(&key(6), 100));
    }
}
