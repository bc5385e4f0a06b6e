//! The colony's random stream.
//!
//! ChaCha8 seeded through `seed_from_u64`, consumed only through the two
//! primitives below so the draw sequence is identical on every platform:
//!
//! * [`SwarmRng::unit`]: 53 high bits of one `u64`, scaled to `[0, 1)`.
//! * [`SwarmRng::below`]: rejection sampling on whole `u64` words.
//!
//! Draw order: initialisation places items in index order (one `below` per
//! attempt), then ants in index order (placement attempts, then one `below(8)`
//! for the heading). Each step visits ants in index order; an ant consumes one
//! `unit` per neighbouring item while voting, then one `unit` for its move
//! (none when every neighbour is blocked).

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwarmRng(ChaCha8Rng);

impl SwarmRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let v = self.0.next_u64();
            if v <= zone {
                return v % n;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SwarmRng::new(7);
        let mut b = SwarmRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.unit().to_bits(), b.unit().to_bits());
            assert_eq!(a.below(13), b.below(13));
        }
    }

    #[test]
    fn ranges() {
        let mut r = SwarmRng::new(1);
        let mut seen = [0usize; 5];
        for _ in 0..10_000 {
            let u = r.unit();
            assert!((0.0..1.0).contains(&u));
            seen[r.below(5) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 1800 && c < 2200), "{seen:?}");
        assert_eq!(r.below(1), 0);
    }
}
