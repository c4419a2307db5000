//! Seeded generators threaded through every sampler.
//!
//! There is no global generator: callers own a [`CombRng`] and pass it down.
//! Independent replicas derive their generator from a root seed and a replica
//! index, so parallel runs stay reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CombRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> CombRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for replica `stream` of a run rooted at `seed`.
pub fn split(seed: u64, stream: u64) -> CombRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
