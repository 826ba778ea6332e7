use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The single RNG type used across the crate, so seeded runs are reproducible
/// bit-for-bit regardless of platform.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded with `seed`. Used where
/// work items (episodes, cells) must not depend on processing order.
pub fn stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = SeededRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
