//! Seedable uniform source and sub-seed derivation.
//!
//! The generator is xoshiro256** (Blackman & Vigna), with its 256-bit state
//! expanded from a 64-bit seed by SplitMix64. Both are small enough to carry
//! here verbatim, which keeps every stream identical across platforms and
//! toolchain upgrades.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One SplitMix64 step: advances `state` and returns the mixed output.
#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    mix64(*state)
}

/// SplitMix64 finalizer (Stafford variant 13). A bijection on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256** state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngState {
    s: [u64; 4],
}

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform real in `[0, 1)` from the top 53 bits of the next output.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }
}

/// Seed for one run of one sweep cell.
///
/// Folds the four inputs through the SplitMix64 finalizer one at a time:
/// `h = mix64(base ^ K0)`, then `h = mix64(h ^ mix64(index + K_i))` for the
/// function, factor and repeat index in that order. Every step is a
/// bijection of the running hash for a fixed index, so tuples that differ only
/// in the last index never collide.
pub fn derive_sub_seed(base_seed: u64, function_index: u64, factor_index: u64, repeat_index: u64) -> u64 {
    const K0: u64 = 0x5050_415F_5345_4544; // "PPA_SEED"
    let mut h = mix64(base_seed ^ K0);
    for (i, idx) in [function_index, factor_index, repeat_index].into_iter().enumerate() {
        let tag = GOLDEN_GAMMA.wrapping_mul(i as u64 + 1);
        h = mix64(h ^ mix64(idx.wrapping_add(tag)));
    }
    h
}
