//! Seeded sampling of small rationals and algebra elements for the property
//! suites. All draws go through `ChaCha8Rng`, so a seed fixes every sample.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rational::{frac, Rational};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// A small nonzero integer in `[-bound, bound]`.
pub fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

/// A vector whose entries are zero with probability `1 - density`.
pub fn sparse_vector<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<Rational> {
    (0..n)
        .map(|_| if rng.gen_bool(density) { rational(rng) } else { Rational::from_integer(0.into()) })
        .collect()
}
