//! Reproducible random streams.
//!
//! Every stream is keyed by a path of integers starting at a master seed:
//! replicate `r` of a run uses `derive_seed(master, r)`, and distance class
//! `d` inside that replicate uses the ChaCha stream `d` of the replicate key.
//! Nothing depends on scheduling, so results are the same for any worker
//! count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// SplitMix64 finaliser.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child key `index` of `parent`.
#[inline]
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix64(
        mix64(parent ^ 0x9e37_79b9_7f4a_7c15)
            .wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
    )
}

/// Key reached by following `path` from `parent`.
pub fn derive_path(parent: u64, path: &[u64]) -> u64 {
    path.iter().fold(parent, |key, &i| derive_seed(key, i))
}

/// Generator for a stream key.
pub fn stream(key: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(key)
}

/// Generator for substream `index` of a stream key.
pub fn substream(key: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}
