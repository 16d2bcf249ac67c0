//! Seeded randomness.
//!
//! Every stochastic routine in the crate draws from ChaCha with 8 rounds as
//! implemented by `rand_chacha` 0.3 ([`ChaCha8Rng`]). A 64-bit seed is
//! expanded with `SeedableRng::seed_from_u64`; independent sub-streams of one
//! seed are selected with `ChaCha8Rng::set_stream`. Child seeds are derived
//! by [`derive_seed`]: the first eight bytes, little-endian, of
//! `SHA-256(parent.to_le_bytes() || label)`.
//!
//! Fixtures produced with these rules are reproducible on any platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator seeded with `seed`.
pub fn seeded_stream(seed: u64, stream: u64) -> Rng {
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn derive_seed(parent: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(parent.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
