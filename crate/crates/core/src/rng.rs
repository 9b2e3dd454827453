//! Counter-based random numbers.
//!
//! Every draw is a pure function of `(seed, stream, index, coordinate)`, so
//! a sample can be regenerated anywhere without replaying a sequence. This
//! is what lets Monte Carlo work be split across threads without changing
//! a single bit of the result.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng {
            key: mix64(seed ^ 0x6A09_E667_F3BC_C908),
        }
    }

    /// An independent generator for a different purpose under the same seed.
    pub fn stream(&self, tag: u64) -> Self {
        CounterRng {
            key: mix64(self.key ^ mix64(tag.wrapping_add(1).wrapping_mul(GOLDEN))),
        }
    }

    #[inline]
    pub fn u64_at(&self, index: u64, coord: u32) -> u64 {
        let sample = mix64(self.key ^ index.wrapping_mul(GOLDEN));
        mix64(sample.wrapping_add((coord as u64 + 1).wrapping_mul(GOLDEN)))
    }

    /// Uniform on [0, 1) with 53 random bits.
    #[inline]
    pub fn uniform(&self, index: u64, coord: u32) -> f64 {
        (self.u64_at(index, coord) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fills `out` with a uniform point of `[-radius, radius]^d`.
    #[inline]
    pub fn point_in_box(&self, index: u64, radius: f64, out: &mut [f64]) {
        for (j, x) in out.iter_mut().enumerate() {
            *x = radius * (2.0 * self.uniform(index, j as u32) - 1.0);
        }
    }

    /// Standard normal draw via Box-Muller on two counter slots.
    pub fn normal(&self, index: u64, coord: u32) -> f64 {
        let u1 = 1.0 - self.uniform(index, 2 * coord);
        let u2 = self.uniform(index, 2 * coord + 1);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
