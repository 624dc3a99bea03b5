//! Counter-based SplitMix64.
//!
//! Output `k` for key `seed` is `mix(seed + (k + 1) * 0x9E3779B97F4A7C15)`
//! with Stafford's "Mix13" finaliser (shifts 30/27/31, multipliers
//! 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB), all arithmetic mod 2⁶⁴.
//! The sequential generator below walks the same counter, so any
//! implementation of those three lines reproduces every random graph.

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Output number `index` of the stream keyed by `seed`.
pub fn at(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Seed for sub-task `index` (a trial, a retry) of a run keyed by `seed`.
pub fn derive(seed: u64, index: u64) -> u64 {
    at(seed, index)
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    seed: u64,
    counter: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = at(self.seed, self.counter);
        self.counter += 1;
        out
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, bound) by rejection of the biased tail.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let rem = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x <= u64::MAX - rem {
                return x % bound;
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }
}
