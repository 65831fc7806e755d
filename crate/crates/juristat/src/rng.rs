//! Small deterministic PRNG used wherever the crate needs randomness.
//!
//! Simulation results must be bit-for-bit reproducible from a caller-supplied
//! seed, on every platform and regardless of threading, so the generator is
//! pinned down to explicit constants rather than left to an external crate
//! that may change algorithms between releases.
//!
//! The core step is Marsaglia's xorshift64 (shift triple 12/25/27) followed
//! by Vigna's xorshift64* output multiplier `0x2545F4914F6CDD1D`. Seeds are
//! scrambled through one round of SplitMix64 so that small consecutive seeds
//! (0, 1, 2, ...) still start from well-separated states; the xorshift state
//! must be nonzero, which the scrambler guarantees with an explicit fallback.

#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    /// Creates a generator from an arbitrary seed. Every seed is valid.
    pub fn new(seed: u64) -> Self {
        // SplitMix64 finalizer.
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64 {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform draw in `[0, 1)` with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform index in `[0, n)` via the widening-multiply reduction, which
    /// avoids the modulo bias of `next_u64() % n`. `n` must be positive.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = XorShift64::new(42);
        let mut b = XorShift64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_diverge() {
        let mut a = XorShift64::new(1);
        let mut b = XorShift64::new(2);
        let same = (0..10).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn unit_draws_stay_in_range() {
        let mut rng = XorShift64::new(7);
        for _ in 0..10_000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn unit_draws_cover_both_halves() {
        let mut rng = XorShift64::new(3);
        let below = (0..10_000).filter(|_| rng.next_f64() < 0.5).count();
        assert!((4_500..=5_500).contains(&below), "below = {below}");
    }

    #[test]
    fn zero_seed_is_usable() {
        let mut rng = XorShift64::new(0);
        let draws: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert!(draws.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn index_draws_hit_every_bucket() {
        let mut rng = XorShift64::new(11);
        let mut seen = [false; 7];
        for _ in 0..1_000 {
            seen[rng.next_index(7)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
