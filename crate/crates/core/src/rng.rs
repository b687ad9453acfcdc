//! Deterministic RNG derivation.
//!
//! Every stochastic component draws from a ChaCha stream derived from a
//! 64-bit scenario seed, so parallel and sequential schedules sample
//! identical populations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master RNG for a (seed) run. Uses the ChaCha default stream.
pub fn master_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent RNG for one candidate in one generation.
///
/// Stream ids start at 1 << 32 so they never collide with the master
/// stream (id 0) of the same seed.
pub fn candidate_rng(seed: u64, generation: u32, index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64 + 1) << 32) | index as u64);
    rng
}

/// Stateless mix of a base seed with an index (outer MPC iteration,
/// bench repetition), splitmix64 finalizer.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
