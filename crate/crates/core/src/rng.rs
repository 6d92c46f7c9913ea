//! Random streams.
//!
//! Every run is driven by a [`PaRng`] (ChaCha with 8 rounds) seeded from a
//! single `u64`. Monte Carlo trials get their own seed from
//! [`derive_seed`], so trial `i` of a batch can be replayed on its own.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type PaRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> PaRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(master ^ mix(index.wrapping_add(0x632b_e59b_d9b4_e019)))
}
