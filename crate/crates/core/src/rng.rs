//! Keyed random streams.
//!
//! A single master seed fans out into independent streams named by a tuple
//! of integers, e.g. `(LEVELS, repetition, vertex)`. The stream seed is
//! obtained by folding each key component into the master seed with the
//! SplitMix64 finalizer:
//!
//! ```text
//! h0 = splitmix64(master)
//! h_{i+1} = splitmix64(h_i ^ splitmix64(key_i ^ 0x9e3779b97f4a7c15))
//! ```
//!
//! and seeds a ChaCha8 generator with `h_last`. Because every draw is tied
//! to its key rather than to a position in a shared stream, results do not
//! depend on iteration order or on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags separating the uses of the master seed.
pub mod tag {
    pub const LEVELS: u64 = 1;
    pub const SIGMA: u64 = 2;
    pub const FRAME: u64 = 3;
    pub const GENERATOR: u64 = 4;
    pub const PAIR_SAMPLE: u64 = 5;
}

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Folds `parts` into `master`.
pub fn derive_key(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(splitmix64(master), |h, &p| {
        splitmix64(h ^ splitmix64(p ^ 0x9e37_79b9_7f4a_7c15))
    })
}

/// Generator for the stream named by `parts` under `master`.
pub fn stream(master: u64, parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_key(master, parts))
}

/// Encodes a possibly negative scale index as a key component.
#[inline]
pub fn signed(x: i64) -> u64 {
    x as u64
}
