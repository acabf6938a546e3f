use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::float::{ln, powf};

/// Seeded source of starting points.
pub(crate) struct Starts {
    rng: ChaCha8Rng,
}

impl Starts {
    pub(crate) fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Starts { rng }
    }

    /// Uniform on (0, 1).
    fn open_unit(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// x with x^p uniform on the simplex over `n` coordinates (all positive).
    pub(crate) fn dirichlet(&mut self, n: usize, p: f64) -> Vec<f64> {
        let y: Vec<f64> = (0..n).map(|_| -ln(self.open_unit())).collect();
        let total: f64 = y.iter().sum();
        y.into_iter().map(|v| powf(v / total, 1.0 / p)).collect()
    }
}
