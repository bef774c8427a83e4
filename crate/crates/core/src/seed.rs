//! Stable seed derivation.
//!
//! Every generator in the crate draws from a ChaCha stream whose seed is
//! derived from the run seed plus structural indices (source, level,
//! replicate, tree, ...). The mixer below is SplitMix64, fixed here so that
//! derived seeds never depend on `std` hasher internals and outputs stay
//! identical across hosts and Rust versions.

/// One SplitMix64 scramble step.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a seed with a sequence of stream indices into a new seed.
pub fn derive(seed: u64, indices: &[u64]) -> u64 {
    let mut acc = splitmix64(seed);
    for &ix in indices {
        acc = splitmix64(acc ^ splitmix64(ix));
    }
    acc
}
