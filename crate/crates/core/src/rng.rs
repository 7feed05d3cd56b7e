//! Deterministic 64-bit PRNG used by every randomized construction.
//!
//! The generator is splitmix64, chosen because the full algorithm fits in a
//! dozen lines and can therefore be reproduced bit-for-bit by any other
//! implementation that needs to replay a seed:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Derived conventions, all fixed here so seeds mean the same thing
//! everywhere:
//! - substream `k` of seed `s` is seeded with `mix(s ^ (k+1)*GOLDEN)`;
//! - `uniform(r)` draws by rejection sampling (no modulo bias);
//! - `bernoulli(p)` accepts when `next_u64() as f64 / 2^64 < p`, with
//!   `p <= 0` and `p >= 1` short-circuited (no draw consumed).

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// splitmix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent substream `k` of `seed`. Used wherever work is fanned out
    /// over trials so that trial results do not depend on scheduling.
    pub fn stream(seed: u64, k: u64) -> Self {
        SplitMix64::new(mix(seed ^ k.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform draw from `[0, r)` by rejection sampling. `r` must be nonzero.
    #[inline]
    pub fn uniform(&mut self, r: u64) -> u64 {
        debug_assert!(r > 0);
        // Largest multiple of r that fits in 2^64; draws at or above it are
        // rejected so every residue is equally likely.
        let zone = u64::MAX - (u64::MAX % r + 1) % r;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % r;
            }
        }
    }

    /// Bernoulli(p) draw; see the module docs for the exact rule.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            return false;
        }
        if p >= 1.0 {
            return true;
        }
        (self.next_u64() as f64) / 18_446_744_073_709_551_616.0 < p
    }

    /// Deterministic Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.uniform(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }

    /// Draws a sorted `k`-subset of `0..n` without replacement
    /// (partial Fisher-Yates over a scratch index array).
    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        debug_assert!(k <= n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.uniform((n - i) as u64) as usize;
            idx.swap(i, j);
        }
        idx.truncate(k);
        idx.sort_unstable();
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_vectors_seed_zero() {
        // First outputs of splitmix64 from state 0, as published with the
        // reference implementation.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(r.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn uniform_stays_in_range_and_replays() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10_000 {
            let r = 1 + (a.next_u64() % 100);
            let x = a.uniform(r);
            // replay: advance b through the same draws
            let _ = b.next_u64();
            let y = b.uniform(r);
            assert!(x < r);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn streams_differ() {
        let mut s0 = SplitMix64::stream(7, 0);
        let mut s1 = SplitMix64::stream(7, 1);
        assert_ne!(s0.next_u64(), s1.next_u64());
    }

    #[test]
    fn bernoulli_endpoints() {
        let mut r = SplitMix64::new(1);
        assert!(!r.bernoulli(0.0));
        assert!(r.bernoulli(1.0));
        // endpoints consume no randomness
        let mut r2 = SplitMix64::new(1);
        assert_eq!(r.next_u64(), r2.next_u64());
    }

    #[test]
    fn subset_is_sorted_distinct() {
        let mut r = SplitMix64::new(99);
        for _ in 0..100 {
            let s = r.subset(50, 12);
            assert_eq!(s.len(), 12);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&x| x < 50));
        }
    }
}
