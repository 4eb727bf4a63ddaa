//! The classic RSA time-lock puzzle: one puzzle, one full squaring run.
//!
//! The symmetric layer XORs the message with a PRF keystream under a key
//! `k`, and `k` is masked as `o2 = k + r^(2^T) mod N`. Solving costs exactly
//! `T = maxss * delta` squarings, which is what makes this the baseline for
//! the multi-instance squaring accounting.

use num_bigint::BigUint;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::prf::{prf_keystream, PrfKey};
use crate::rsa::{trapdoor_power, RsaKeypair};
use crate::squaring::{sequential_square, CancelToken, SquaringReport};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselinePuzzle {
    #[serde(with = "crate::ser::hex_big")]
    n: BigUint,
    t: u64,
    #[serde(with = "crate::ser::hex_big")]
    r: BigUint,
    #[serde(with = "crate::ser::hex_bytes")]
    o1: Vec<u8>,
    #[serde(with = "crate::ser::hex_big")]
    o2: BigUint,
}

impl BaselinePuzzle {
    pub fn squaring_count(&self) -> u64 {
        self.t
    }
}

/// Locks `message` for `delta` seconds against a solver doing `maxss`
/// squarings per second.
pub fn baseline_tlp_generate(
    message: &[u8],
    delta: u64,
    maxss: u64,
    keys: &RsaKeypair,
    rng: &mut impl RngCore,
) -> Result<BaselinePuzzle> {
    let t = maxss
        .checked_mul(delta)
        .ok_or_else(|| Error::InvalidSchedule("maxss * delta overflows".into()))?;
    let k = keys.rand_base(rng);
    let r = keys.rand_base(rng);
    let keystream = prf_keystream(&PrfKey::from_element(&k), message.len());
    let o1 = message.iter().zip(&keystream).map(|(m, s)| m ^ s).collect();
    let mask = trapdoor_power(&r, t, keys)?;
    let o2 = (&k + &mask) % keys.modulus();
    Ok(BaselinePuzzle { n: keys.modulus().clone(), t, r, o1, o2 })
}

/// Recovers the message by `T` sequential squarings.
pub fn baseline_tlp_solve(
    puzzle: &BaselinePuzzle,
    cancel: &CancelToken,
) -> Result<(Vec<u8>, SquaringReport)> {
    let report = sequential_square(&puzzle.r, puzzle.t, &puzzle.n, cancel)?;
    let k = ((&puzzle.o2 + &puzzle.n) - &report.result) % &puzzle.n;
    let keystream = prf_keystream(&PrfKey::from_element(&k), puzzle.o1.len());
    let message = puzzle.o1.iter().zip(&keystream).map(|(c, s)| c ^ s).collect();
    Ok((message, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsa::rsa_keygen;
    use crate::testutil::rng;

    #[test]
    fn solve_recovers_message_and_counts_squarings() {
        let mut rng = rng(1);
        let keys = rsa_keygen(64, &mut rng).unwrap();
        let puzzle = baseline_tlp_generate(b"42", 16, 1, &keys, &mut rng).unwrap();
        let (m, report) = baseline_tlp_solve(&puzzle, &CancelToken::new()).unwrap();
        assert_eq!(m, b"42");
        assert_eq!(report.squarings_performed, 16);
    }

    #[test]
    fn zero_horizon_recovers_immediately() {
        let mut rng = rng(2);
        let keys = rsa_keygen(64, &mut rng).unwrap();
        let puzzle = baseline_tlp_generate(b"now", 0, 7, &keys, &mut rng).unwrap();
        let (m, report) = baseline_tlp_solve(&puzzle, &CancelToken::new()).unwrap();
        assert_eq!(m, b"now");
        assert_eq!(report.squarings_performed, 0);
    }

    #[test]
    fn independent_puzzles_cost_the_sum_of_horizons() {
        let mut rng = rng(3);
        let keys = rsa_keygen(64, &mut rng).unwrap();
        let deltas = [3u64, 5, 9];
        let maxss = 4u64;
        let mut total = 0;
        for (i, d) in deltas.iter().enumerate() {
            let puzzle =
                baseline_tlp_generate(&[i as u8], *d, maxss, &keys, &mut rng).unwrap();
            let (m, report) = baseline_tlp_solve(&puzzle, &CancelToken::new()).unwrap();
            assert_eq!(m, vec![i as u8]);
            total += report.squarings_performed;
        }
        assert_eq!(total, maxss * deltas.iter().sum::<u64>());
    }
}
