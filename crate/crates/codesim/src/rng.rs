//! Counter-based randomness: every random object is produced by a stream
//! cipher keyed with the experiment seed and the object's full index tuple,
//! so regeneration is cheap and results are independent of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) const TAG_RESOLVE_WORD: u64 = 0x52;
pub(crate) const TAG_U0_WORD: u64 = 0xB0;
pub(crate) const TAG_U1_WORD: u64 = 0xB1;
pub(crate) const TAG_U2_WORD: u64 = 0xB2;
pub(crate) const TAG_TRIAL: u64 = 0x7A;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for the object identified by `tags` under `seed`.
pub(crate) fn stream_rng(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut z = splitmix(seed ^ 0xA076_1D64_78BD_642F);
    for &tag in tags {
        z = splitmix(z ^ splitmix(tag.wrapping_add(0x51ED_2701)));
    }
    ChaCha8Rng::seed_from_u64(z)
}

/// Independent per-codebook seeds derived from a base experiment seed.
pub fn derive_seeds(base: u64, count: usize) -> Vec<u64> {
    (0..count as u64)
        .map(|k| splitmix(base ^ splitmix(k.wrapping_add(0xC0DE_B00C))))
        .collect()
}

/// Samples an index proportionally to nonnegative `weights`; `None` when the
/// total mass is zero.
pub(crate) fn sample_weights(rng: &mut impl Rng, weights: &[f64]) -> Option<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return None;
    }
    let mut remaining = rng.gen::<f64>() * total;
    let mut last_positive = None;
    for (k, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last_positive = Some(k);
        remaining -= w;
        if remaining <= 0.0 {
            return Some(k);
        }
    }
    last_positive
}
