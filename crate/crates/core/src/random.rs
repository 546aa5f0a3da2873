//! Seeded randomness shared by the randomized structures.
//!
//! Every structure draws its keys from its own ChaCha stream, addressed by a
//! path of labels under the global seed, so adding a structure never shifts
//! the randomness of another. Per-vertex random choices (colors, layer
//! membership) are evaluated on demand from those keys with a keyed mixer
//! instead of being stored in `O(n)` tables per structure.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Address of one independent random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StreamSeed {
    seed: u64,
    stream: u64,
}

impl StreamSeed {
    pub fn new(seed: u64) -> Self {
        StreamSeed { seed, stream: 0 }
    }

    pub fn seed(self) -> u64 {
        self.seed
    }

    /// Independent sub-stream for the structure named `label`.
    pub fn child(self, label: u64) -> Self {
        StreamSeed {
            seed: self.seed,
            stream: mix64(self.stream ^ mix64(label.wrapping_add(GOLDEN))),
        }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Draws `count` 64-bit keys from this stream.
    pub fn keys(self, count: usize) -> alloc::vec::Vec<u64> {
        let mut rng = self.rng();
        (0..count).map(|_| rng.next_u64()).collect()
    }
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Pseudorandom function of `x` under `key`.
#[inline]
pub(crate) fn keyed(key: u64, x: u64) -> u64 {
    mix64(key ^ mix64(x.wrapping_add(GOLDEN)))
}

/// Maps a uniform 64-bit value onto `0..bound`.
#[inline]
pub(crate) fn reduce(h: u64, bound: u32) -> u32 {
    ((h as u128 * bound as u128) >> 64) as u32
}
