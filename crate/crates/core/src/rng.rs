//! Seeded generators and the substream derivation every randomized stage uses.
//!
//! A run is governed by one 64-bit seed. Each stage mixes a fixed tag into
//! that seed, and each trial of the stage gets its own ChaCha stream keyed by
//! the trial index, so results never depend on how trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Child seed for `(seed, tag)`.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    tag.bytes().fold(mix64(seed), |acc, b| mix64(acc ^ u64::from(b)))
}

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent per-index generators under one derived key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substreams {
    key: u64,
}

impl Substreams {
    pub fn new(seed: u64, tag: &str) -> Self {
        Substreams { key: derive_seed(seed, tag) }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn stream(&self, index: u64) -> Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.key);
        rng.set_stream(index);
        rng
    }

    /// A nested family, e.g. per restart inside a per-instance family.
    pub fn child(&self, index: u64) -> Substreams {
        Substreams { key: mix64(self.key ^ mix64(index.wrapping_add(1))) }
    }
}
