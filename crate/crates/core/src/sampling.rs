//! Seed handling shared by every sampling-based check.
//!
//! Each sample index gets its own ChaCha stream derived from the run seed, so
//! sample `i` sees the same draws no matter which check consumes it or in
//! what order samples are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

/// RNG for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// RNG for a single sequential stream.
pub fn stream_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}
