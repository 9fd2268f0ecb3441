use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::ncword::{Letter, Word};
use crate::special_fn::ParameterSet;

/// Per-check parameter generator.
///
/// The stream is keyed by `sha256(seed ‖ id)`, so every check owns its own
/// generator and the order in which checks run cannot change any draw.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, id: &str) -> Self {
        let mut h = Sha256::new();
        h.update(seed.to_le_bytes());
        h.update(id.as_bytes());
        Sampler { rng: ChaCha8Rng::from_seed(h.finalize().into()) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A complex number with modulus uniform in `[r_lo, r_hi)` and uniform argument.
    pub fn polar(&mut self, r_lo: f64, r_hi: f64) -> C64 {
        let r = self.uniform(r_lo, r_hi);
        C64::from_polar(r, self.uniform(0.0, TAU))
    }

    /// Base `q` with `0.3 ≤ |q| < 0.9`.
    pub fn q(&mut self) -> C64 {
        self.polar(0.3, 0.9)
    }

    /// Nome `p` with `0.05 ≤ |p| < 0.5`.
    pub fn p(&mut self) -> C64 {
        self.polar(0.05, 0.5)
    }

    /// `a` or `b` with modulus in `[0.2, 2)`.
    pub fn ab(&mut self) -> C64 {
        self.polar(0.2, 2.0)
    }

    pub fn elliptic(&mut self) -> ParameterSet {
        let (a, b, q, p) = (self.ab(), self.ab(), self.q(), self.p());
        ParameterSet::elliptic(a, b, q, p).expect("sampled parameters are admissible")
    }

    /// A uniformly random word of exactly `len` letters.
    pub fn word(&mut self, len: usize) -> Word {
        Word((0..len).map(|_| if self.rng.gen_bool(0.5) { Letter::X } else { Letter::Y }).collect())
    }
}

/// Digest for draws that are not a full quadruple; missing entries are zero.
pub fn digest_of(a: C64, b: C64, q: C64, p: C64) -> String {
    ParameterSet { a, b, q, p }.digest()
}
