//! Deterministic, splittable random-number generation.
//!
//! Streams are addressed by a key path (master seed plus a list of labels
//! such as experiment id, replicate, feature, resample). The generator is
//! counter-based (Philox 4x64-10), so any stream can be constructed directly
//! from its key without fast-forwarding, and sibling streams can be consumed
//! concurrently without coordination. Output for a given key is identical
//! regardless of thread count or consumption order elsewhere.

use crate::normal;

const PHILOX_M0: u64 = 0xD2E7_470E_E14C_6C93;
const PHILOX_M1: u64 = 0xCA5A_8263_9512_1157;
const PHILOX_W0: u64 = 0x9E37_79B9_7F4A_7C15;
const PHILOX_W1: u64 = 0xBB67_AE85_84CA_A73B;

#[inline]
fn mulhilo(a: u64, b: u64) -> (u64, u64) {
    let wide = (a as u128) * (b as u128);
    ((wide >> 64) as u64, wide as u64)
}

/// One Philox 4x64 block: 10 rounds over a 256-bit counter with a 128-bit key.
#[inline]
pub fn philox4x64_10(mut ctr: [u64; 4], mut key: [u64; 2]) -> [u64; 4] {
    for round in 0..10 {
        let (hi0, lo0) = mulhilo(PHILOX_M0, ctr[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, ctr[2]);
        ctr = [hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0];
        if round < 9 {
            key[0] = key[0].wrapping_add(PHILOX_W0);
            key[1] = key[1].wrapping_add(PHILOX_W1);
        }
    }
    ctr
}

/// SplitMix64 finalizer; bijective on u64.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Address of one random stream: a master seed refined by an ordered path of
/// labels. Equal paths always yield the identical stream; distinct paths
/// yield statistically independent streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StreamKey {
    state: u64,
}

impl StreamKey {
    pub fn new(master_seed: u64) -> Self {
        StreamKey { state: mix64(master_seed ^ 0x5851_F42D_4C95_7F2D) }
    }

    /// Derive the child key for one more path component.
    #[must_use]
    pub fn child(&self, label: u64) -> Self {
        let absorbed = mix64(label.wrapping_add(0xD1B5_4A32_D192_ED03));
        StreamKey { state: mix64(self.state.wrapping_add(PHILOX_W0) ^ absorbed) }
    }

    /// Key for a full (master_seed, labels) path.
    pub fn from_labels(master_seed: u64, labels: &[u64]) -> Self {
        labels.iter().fold(Self::new(master_seed), |k, &l| k.child(l))
    }

    /// Finalize the key path into a generator positioned at counter zero.
    pub fn generator(&self) -> Generator {
        let key = [
            mix64(self.state ^ 0xA076_1D64_78BD_642F),
            mix64(self.state ^ 0xE703_7ED1_A0B4_28DB),
        ];
        Generator { key, block: 0, buf: [0; 4], pos: 4 }
    }
}

/// Convenience wrapper for the common (seed, labels) derivation.
pub fn derive_stream(master_seed: u64, labels: &[u64]) -> Generator {
    StreamKey::from_labels(master_seed, labels).generator()
}

/// A counter-based generator. Value-like: cheap to create, no heap state,
/// confined to one task at a time.
#[derive(Clone, Debug)]
pub struct Generator {
    key: [u64; 2],
    block: u64,
    buf: [u64; 4],
    pos: usize,
}

impl Generator {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        if self.pos == 4 {
            self.buf = philox4x64_10([self.block, 0, 0, 0], self.key);
            self.block = self.block.wrapping_add(1);
            self.pos = 0;
        }
        let out = self.buf[self.pos];
        self.pos += 1;
        out
    }

    /// Uniform draw on [0, 1) with 53-bit resolution.
    #[inline]
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform draw on the open interval (0, 1); never returns an endpoint,
    /// so it is safe to feed through inverse cdfs.
    #[inline]
    pub fn open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform index in [0, n). Multiply-shift; bias is O(n / 2^64).
    #[inline]
    pub fn uniform_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (((self.next_u64() as u128) * (n as u128)) >> 64) as usize
    }

    /// Standard normal variate via the inverse-cdf transform, consuming
    /// exactly one uniform, so stream positions stay aligned across uses.
    #[inline]
    pub fn std_normal(&mut self) -> f64 {
        normal::std_normal_quantile_unchecked(self.open01())
    }
}
