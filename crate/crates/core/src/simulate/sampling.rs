use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::channel::ChannelModel;
use crate::ntype::NTypeVector;

/// Generator for trial `index` of an experiment seeded with `master`:
/// ChaCha8 keyed by `master`, on stream `index`. Trials are independent of
/// scheduling, so results do not depend on the thread count.
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// SplitMix64 finalizer; derives independent seeds for sweep cells.
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `Multinomial(trials, p)` by sequential conditional binomials.
pub fn sample_multinomial<R: Rng + ?Sized>(trials: u32, p: &[f64], rng: &mut R) -> Vec<u32> {
    let mut out = alloc::vec![0u32; p.len()];
    let mut left = trials as u64;
    let mut mass = 1.0f64;
    for (j, &pj) in p.iter().enumerate() {
        if left == 0 {
            break;
        }
        if j + 1 == p.len() {
            out[j] = left as u32;
            break;
        }
        let cond = if mass > 0.0 { (pj / mass).clamp(0.0, 1.0) } else { 0.0 };
        let draw = if cond >= 1.0 {
            left
        } else if cond <= 0.0 {
            0
        } else {
            Binomial::new(left, cond).expect("probability in (0, 1)").sample(rng)
        };
        out[j] = draw as u32;
        left -= draw;
        mass -= pj;
    }
    out
}

/// Output type of a channel use with input type `x`: row `i` receives
/// `x_i` independent draws and the column counts are summed.
pub fn sample_output_type<R: Rng + ?Sized>(x: &NTypeVector, ch: &ChannelModel, rng: &mut R) -> Vec<u32> {
    let mut y = alloc::vec![0u32; ch.k()];
    for (row, &c) in ch.rows().iter().zip(x.counts()) {
        if c == 0 {
            continue;
        }
        for (acc, d) in y.iter_mut().zip(sample_multinomial(c, row, rng)) {
            *acc += d;
        }
    }
    y
}

/// [`sample_output_type`] with a fresh generator from `seed`.
pub fn sample_output_type_seeded(x: &NTypeVector, ch: &ChannelModel, seed: u64) -> Vec<u32> {
    sample_output_type(x, ch, &mut ChaCha8Rng::seed_from_u64(seed))
}
