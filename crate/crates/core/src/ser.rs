//! Canonical serialization conventions.
//!
//! Field and ring elements travel as lowercase hexadecimal strings,
//! big-endian, without leading zeros (`0` encodes zero). Public objects
//! serialize to canonical JSON: UTF-8, object keys sorted.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::{Error, Result};

/// Lowercase big-endian hex, no leading zeros; zero is `"0"`.
pub fn big_to_hex(v: &BigUint) -> String {
    if v.is_zero() {
        "0".to_string()
    } else {
        format!("{v:x}")
    }
}

/// Parses the hex convention above.
pub fn big_from_hex(s: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::Serialization(format!("invalid hex integer {s:?}")));
    }
    BigUint::parse_bytes(s.as_bytes(), 16)
        .ok_or_else(|| Error::Serialization(format!("invalid hex integer {s:?}")))
}

/// Canonical JSON: round-trips through `serde_json::Value` so object keys
/// come out sorted regardless of struct field order.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

/// Pretty canonical JSON for files meant to be read by humans.
pub fn to_canonical_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

/// Serde adapter for a single `BigUint` field.
pub mod hex_big {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&big_to_hex(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        big_from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<BigUint>`.
pub mod hex_big_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(big_to_hex))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| big_from_hex(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Vec<Vec<BigUint>>`.
pub mod hex_big_vec_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Vec<BigUint>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(big_to_hex).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<BigUint>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| big_from_hex(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Serde adapter for `Vec<(BigUint, BigUint)>`.
pub mod hex_big_pairs {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[(BigUint, BigUint)],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(x, y)| [big_to_hex(x), big_to_hex(y)]))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(BigUint, BigUint)>, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        raw.iter()
            .map(|[x, y]| {
                Ok((
                    big_from_hex(x).map_err(serde::de::Error::custom)?,
                    big_from_hex(y).map_err(serde::de::Error::custom)?,
                ))
            })
            .collect()
    }
}

/// Serde adapter for byte strings (keys, digests) as lowercase hex.
pub mod hex_bytes {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&hex::encode(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<u8>, D::Error> {
        let s = String::deserialize(d)?;
        hex::decode(&s).map_err(serde::de::Error::custom)
    }
}
