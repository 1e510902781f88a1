//! Deterministic seed splitting.
//!
//! One root seed feeds every randomized routine. Each routine derives its own
//! stream from the root seed and a fixed label, so adding a call elsewhere never
//! shifts the random choices of an unrelated subroutine.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and a label.
pub fn derive(seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, then mixed with the parent seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix64(seed ^ mix64(h))
}

/// Derives a child seed from `seed`, a label and an index.
pub fn derive_idx(seed: u64, label: &str, idx: u64) -> u64 {
    mix64(derive(seed, label) ^ mix64(idx.wrapping_add(1)))
}

pub fn rng_for(seed: u64, label: &str) -> Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, label))
}
