use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::channel::ChannelModel;
use crate::math::sqrt;
use crate::Result;

use super::codebook::{build_grid_codebook, Codebook};
use super::decode::{Decoder, DecoderKind};
use super::sampling::{mix_seed, sample_output_type, trial_rng};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub trials: u64,
    pub errors: u64,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl TrialOutcome {
    pub fn from_counts(trials: u64, errors: u64) -> Self {
        let (lo, hi) = wilson_interval(errors, trials, Z_95);
        let rate = if trials == 0 { 0.0 } else { errors as f64 / trials as f64 };
        TrialOutcome { trials, errors, rate, wilson_lo: lo, wilson_hi: hi }
    }

    /// Whether the two 95% intervals do not overlap.
    pub fn disjoint_from(&self, other: &TrialOutcome) -> bool {
        self.wilson_hi < other.wilson_lo || other.wilson_hi < self.wilson_lo
    }
}

/// Wilson score interval for `errors` successes in `trials`.
pub fn wilson_interval(errors: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    let lo = if errors == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if errors == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// One trial: draw a uniform message, pass its codeword through the
/// channel, decode. Returns `true` on a decoding error.
pub fn run_trial(book: &Codebook, ch: &ChannelModel, decoder: &Decoder, seed: u64, index: u64) -> bool {
    let mut rng = trial_rng(seed, index);
    let msg = rng.random_range(0..book.m());
    let y = sample_output_type(&book.codewords[msg], ch, &mut rng);
    decoder.decode(&y) != msg
}

/// Error probability estimate from `trials` seeded trials.
pub fn simulate_error(
    book: &Codebook,
    ch: &ChannelModel,
    trials: u64,
    seed: u64,
    kind: DecoderKind,
) -> Result<TrialOutcome> {
    let decoder = Decoder::new(kind, book, ch)?;
    let errors = (0..trials).filter(|&i| run_trial(book, ch, &decoder, seed, i)).count() as u64;
    Ok(TrialOutcome::from_counts(trials, errors))
}

/// One `(R, n)` cell of a rate sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub rate: f64,
    pub n: u32,
    pub m: Option<usize>,
    pub separated: bool,
    pub outcome: Option<TrialOutcome>,
    /// Why the cell was skipped, if it was.
    pub note: Option<String>,
}

/// Seed of cell `(rate index, n index)` of a sweep seeded with `seed`.
pub fn cell_seed(seed: u64, rate_idx: usize, n_idx: usize) -> u64 {
    mix_seed(seed, rate_idx as u64 + 1, n_idx as u64 + 1)
}

/// Grid-codebook error estimates over `rates × ns`, one cell at a time.
/// Infeasible cells are reported, not fatal.
pub fn sweep(
    ch: &ChannelModel,
    rates: &[f64],
    ns: &[u32],
    trials: u64,
    seed: u64,
    kind: DecoderKind,
) -> Result<Vec<SweepCell>> {
    let mut out = Vec::with_capacity(rates.len() * ns.len());
    for (ri, &rate) in rates.iter().enumerate() {
        for (ni, &n) in ns.iter().enumerate() {
            let cell = match build_grid_codebook(ch, n, rate) {
                Ok(book) => {
                    let outcome = simulate_error(&book, ch, trials, cell_seed(seed, ri, ni), kind)?;
                    SweepCell {
                        rate,
                        n,
                        m: Some(book.m()),
                        separated: book.separated,
                        outcome: Some(outcome),
                        note: None,
                    }
                }
                Err(e @ crate::Error::InfeasibleRate(_)) => {
                    SweepCell { rate, n, m: None, separated: false, outcome: None, note: Some(alloc::format!("{e}")) }
                }
                Err(e) => return Err(e),
            };
            out.push(cell);
        }
    }
    Ok(out)
}
