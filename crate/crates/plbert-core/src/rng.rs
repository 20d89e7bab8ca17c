//! Deterministic random-number plumbing.
//!
//! Every stochastic component (parameter init, masking, data order,
//! dropout) draws from its own ChaCha8 stream derived from the global seed
//! plus a stream tag. Masking additionally folds in the record index, so
//! the result of masking a record never depends on which worker or batch
//! touched it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::num::Real;

pub type Rng = ChaCha8Rng;

/// Stream tags; values are arbitrary but fixed forever (checkpoints and
/// reproducibility guarantees depend on them).
pub mod stream {
    pub const INIT: u64 = 0x01;
    pub const ORDER: u64 = 0x02;
    pub const MASK: u64 = 0x03;
    pub const DROPOUT: u64 = 0x04;
    pub const SPLIT: u64 = 0x05;
}

/// splitmix64 finalizer; decorrelates nearby seed values.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Folds a sequence of words into one seed.
pub fn fold(words: &[u64]) -> u64 {
    let mut acc = 0u64;
    for &w in words {
        acc = mix(acc ^ w);
    }
    acc
}

/// RNG for a (seed, stream) pair.
pub fn stream_rng(seed: u64, tag: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(fold(&[seed, tag]))
}

/// RNG for a (seed, stream, index...) tuple, e.g. per-record mask streams.
pub fn indexed_rng(seed: u64, tag: u64, indices: &[u64]) -> Rng {
    let mut words = alloc::vec![seed, tag];
    words.extend_from_slice(indices);
    ChaCha8Rng::seed_from_u64(fold(&words))
}

/// One sample from a normal truncated to ±2 standard deviations
/// (Box–Muller with rejection outside the truncation bound).
pub fn truncated_normal<T: Real>(rng: &mut impl rand::Rng, std: f64) -> T {
    loop {
        let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
        let u2: f64 = rng.random::<f64>();
        let z = libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2);
        if z.abs() <= 2.0 {
            return T::from_f64(z * std);
        }
    }
}
