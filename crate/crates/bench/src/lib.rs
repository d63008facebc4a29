//! Shared inputs for the benchmarks.

use quorumlace_core::gen::random_pfps;
use quorumlace_core::Pfps;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible random system with `n` processes.
pub fn random_system(n: usize, seed: u64) -> Pfps {
    random_pfps(&mut ChaCha8Rng::seed_from_u64(seed), n)
}
