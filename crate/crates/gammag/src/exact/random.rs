//! Seeded randomness. Every randomized step takes an explicit `u64` seed and
//! draws from ChaCha8 seeded with `seed_from_u64`, so results are
//! reproducible across runs and platforms. The default seed is 0.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_nonzero(rng: &mut SeededRng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}
