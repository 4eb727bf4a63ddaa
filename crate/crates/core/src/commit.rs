//! Hash commitment: SHA-256 over length-prefixed fields.
//!
//! Each field enters the hash as a 4-byte big-endian length followed by its
//! bytes, so no pair of distinct (message, opening) inputs collides at the
//! byte level.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// 32-byte commitment digest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Commitment {
    #[serde(with = "serde_bytes32")]
    digest: [u8; 32],
}

impl Commitment {
    pub fn digest(&self) -> &[u8; 32] {
        &self.digest
    }
}

fn absorb(hasher: &mut Sha256, field: &[u8]) {
    hasher.update((field.len() as u32).to_be_bytes());
    hasher.update(field);
}

/// Commits to `message` under the secret `opening_key`.
pub fn commit(message: &[u8], opening_key: &[u8]) -> Commitment {
    let mut hasher = Sha256::new();
    absorb(&mut hasher, message);
    absorb(&mut hasher, opening_key);
    Commitment { digest: hasher.finalize().into() }
}

/// Accepts iff the recomputed digest equals `com` byte for byte.
pub fn verify_commit(com: &Commitment, message: &[u8], opening_key: &[u8]) -> bool {
    commit(message, opening_key).digest == com.digest
}

/// Commitment to a field element under a ring element, both as minimal
/// big-endian bytes.
pub fn commit_elements(message: &BigUint, opening_key: &BigUint) -> Commitment {
    commit(&message.to_bytes_be(), &opening_key.to_bytes_be())
}

pub fn verify_commit_elements(com: &Commitment, message: &BigUint, opening_key: &BigUint) -> bool {
    verify_commit(com, &message.to_bytes_be(), &opening_key.to_bytes_be())
}

mod serde_bytes32 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u8; 32], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[u8; 32], D::Error> {
        let s = String::deserialize(d)?;
        let bytes = hex::decode(&s).map_err(serde::de::Error::custom)?;
        bytes
            .try_into()
            .map_err(|_| serde::de::Error::custom("expected 32 bytes"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_accepts() {
        let com = commit(b"message", b"opening");
        assert!(verify_commit(&com, b"message", b"opening"));
    }

    #[test]
    fn flipped_message_bit_rejects() {
        let com = commit(b"message", b"opening");
        let mut m = b"message".to_vec();
        m[0] ^= 1;
        assert!(!verify_commit(&com, &m, b"opening"));
    }

    #[test]
    fn flipped_opening_bit_rejects() {
        let com = commit(b"message", b"opening");
        let mut r = b"opening".to_vec();
        r[3] ^= 0x80;
        assert!(!verify_commit(&com, b"message", &r));
    }

    #[test]
    fn length_prefix_separates_field_boundaries() {
        assert_ne!(
            commit(b"ab", b"c").digest(),
            commit(b"a", b"bc").digest()
        );
    }

    #[test]
    fn element_commitments_round_trip() {
        let m = BigUint::from(42u32);
        let k = BigUint::from(0xdeadbeefu32);
        let com = commit_elements(&m, &k);
        assert!(verify_commit_elements(&com, &m, &k));
        assert!(!verify_commit_elements(&com, &(m + 1u32), &k));
    }
}
