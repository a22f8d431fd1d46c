//! Replicate seeding.
//!
//! Every replicate owns a ChaCha8 stream keyed by a 64-bit seed derived from
//! `(base_seed, index)`, so results do not depend on scheduling order and any
//! single replicate can be rerun from the seed recorded in the output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `index` under `base_seed`.
pub fn replicate_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(index))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

pub fn replicate_rng(base_seed: u64, index: u64) -> SimRng {
    rng_from_seed(replicate_seed(base_seed, index))
}
