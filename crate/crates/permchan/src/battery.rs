//! Seeded families of small channels and inputs for the verification suites.

use num_bigint::BigInt;
use permchan_core::ntype::{enumerate_ntypes, Compositions};
use permchan_core::rational::BigRational;
use permchan_core::{ChannelModel, NTypeVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed of the shipped battery.
pub const BATTERY_SEED: u64 = 20_240_611;

/// Common denominator of battery entries.
pub const DENOMINATOR: i64 = 1000;

/// Every entry is at least this many thousandths.
pub const MIN_ENTRY: i64 = 50;

/// `(q, k)` shapes in the battery; three channels each.
pub const SHAPES: [(usize, usize); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

/// Largest block length in the battery.
pub const MAX_N: u32 = 12;

/// Up to this block length every input type is used; above it, a seeded
/// sample of [`SAMPLED_TYPES`].
pub const FULL_ENUMERATION_N: u32 = 8;
pub const SAMPLED_TYPES: usize = 20;

/// A row of `k` multiples of `1/1000`, each at least `min/1000`.
pub fn random_row<R: Rng>(k: usize, min: i64, rng: &mut R) -> Vec<i64> {
    let spare = DENOMINATOR - min * k as i64;
    let mut cuts: Vec<i64> = (0..k - 1).map(|_| rng.random_range(0..=spare)).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut row = Vec::with_capacity(k);
    for c in cuts.into_iter().chain(std::iter::once(spare)) {
        row.push(min + c - prev);
        prev = c;
    }
    row
}

pub fn rational_channel(rows: &[Vec<i64>]) -> ChannelModel {
    let exact = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(DENOMINATOR))).collect())
        .collect();
    ChannelModel::from_rationals(exact).expect("rows sum to the denominator")
}

/// A strictly positive `q × k` channel with entries in `{50, …, 1000}/1000`.
pub fn random_channel<R: Rng>(q: usize, k: usize, rng: &mut R) -> ChannelModel {
    let rows: Vec<Vec<i64>> = (0..q).map(|_| random_row(k, MIN_ENTRY, rng)).collect();
    rational_channel(&rows)
}

/// The shipped battery: three channels per shape in [`SHAPES`].
pub fn channels(seed: u64) -> Vec<ChannelModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SHAPES.iter().flat_map(|&(q, k)| (0..3).map(|_| random_channel(q, k, &mut rng)).collect::<Vec<_>>()).collect()
}

/// Input types at block length `n`: all of them up to
/// [`FULL_ENUMERATION_N`], otherwise a seeded sample without replacement.
pub fn input_types(n: u32, q: usize, rng: &mut ChaCha8Rng) -> Vec<NTypeVector> {
    let mut all = enumerate_ntypes(n, q).expect("battery sizes are small");
    if n > FULL_ENUMERATION_N && all.len() > SAMPLED_TYPES {
        all.shuffle(rng);
        all.truncate(SAMPLED_TYPES);
        all.sort();
    }
    all
}

/// Five interior reference laws on `k` symbols, spread over the lattice of
/// resolution `k + 4`.
pub fn reference_laws(k: usize) -> Vec<Vec<f64>> {
    let res = k as u32 + 4;
    let interior: Vec<Vec<u32>> = Compositions::new(res, k).filter(|c| c.iter().all(|&x| x > 0)).collect();
    let want = 5.min(interior.len());
    (0..want)
        .map(|i| {
            let idx = if want == 1 { 0 } else { i * (interior.len() - 1) / (want - 1) };
            interior[idx].iter().map(|&x| x as f64 / res as f64).collect()
        })
        .collect()
}

/// One divergence instance: channel index, input type and reference law
/// (`None` for the output marginal).
#[derive(Debug, Clone)]
pub struct Instance {
    pub channel: usize,
    pub pi: NTypeVector,
    pub q: Option<Vec<f64>>,
}

/// Every `(channel, π, Q)` triple of the battery for `n = 1..=MAX_N`.
pub fn instances(channels: &[ChannelModel], seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::new();
    for (c, ch) in channels.iter().enumerate() {
        let refs = reference_laws(ch.k());
        for n in 1..=MAX_N {
            for pi in input_types(n, ch.q(), &mut rng) {
                out.push(Instance { channel: c, pi: pi.clone(), q: None });
                for q in &refs {
                    out.push(Instance { channel: c, pi: pi.clone(), q: Some(q.clone()) });
                }
            }
        }
    }
    out
}
