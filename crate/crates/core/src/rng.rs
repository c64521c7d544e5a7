//! Reproducible random streams: a `(seed, stream)` pair fully determines
//! every draw.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngStream {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Independent stream derived from the same seed.
    pub fn substream(&self, index: u64) -> Self {
        RngStream::new(self.seed, self.stream.wrapping_mul(0x9E37_79B9).wrapping_add(index + 1))
    }

    /// Complex Gaussian with independent unit-variance real and imaginary
    /// parts, so `E|Z|^2 = 2`.
    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.sample(StandardNormal), self.sample(StandardNormal))
    }

    pub fn uniform(&mut self) -> f64 {
        self.random::<f64>()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
