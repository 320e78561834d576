//! Counter-based randomness for percolation sampling.
//!
//! Every random decision in this crate is a pure function of
//! `(seed, stream, trial, index)` pushed through a SplitMix64-style
//! finalizer chain. There is no sequential generator state, so trials can
//! be farmed out to any number of workers in any order and still produce
//! bit-identical configurations, and a single edge's coin can be re-derived
//! in isolation. `rand`-family generators are deliberately not used here:
//! they are stateful, and reproducibility across worker counts is a
//! contract of this crate.

/// Weyl increment used to decorrelate the raw seed before chaining.
const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Stream for plain i.i.d. configuration sampling (`sample_config`,
/// `mc_giant`, `two_point`, ...).
pub const STREAM_PERC: u64 = 0;
/// Stream for ghost-field vertex membership.
pub const STREAM_GHOST: u64 = 1;
/// Streams for the two independent layers of the union coupling.
pub const STREAM_COUPLE_A: u64 = 2;
pub const STREAM_COUPLE_B: u64 = 3;
/// Stream for the auxiliary field of the rough-embedding coupling.
pub const STREAM_EMBED: u64 = 4;

/// SplitMix64 finalizer: a bijective mixer with full avalanche.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed hash of the full counter tuple. Each field is absorbed through
/// its own finalizer round, so distinct tuples give independent-looking
/// outputs without any cross-field collision structure.
#[inline]
pub fn counter_hash(seed: u64, stream: u64, trial: u64, index: u64) -> u64 {
    let mut h = mix(seed ^ GAMMA);
    h = mix(h ^ stream);
    h = mix(h ^ trial);
    mix(h ^ index)
}

/// Maps a hash to the unit interval using the top 53 bits, so the result
/// is an exact dyadic rational in [0, 1).
#[inline]
pub fn uniform_f64(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// One Bernoulli(p) coin for the given counter tuple.
#[inline]
pub fn bernoulli(seed: u64, stream: u64, trial: u64, index: u64, p: f64) -> bool {
    uniform_f64(counter_hash(seed, stream, trial, index)) < p
}
