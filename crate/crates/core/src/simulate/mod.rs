//! Monte Carlo estimates of decoding error for explicit codebooks.
//!
//! Only output types are sampled: the permutation is uniform, so the type
//! carries everything a decoder can use.

mod codebook;
mod decode;
mod sampling;
mod trials;

pub use codebook::{
    build_block_code, build_grid_codebook, independent_rows, message_count, target_spacing, Codebook, CodebookKind,
};
pub use decode::{exact_ml_decode, min_divergence_decode, Decoder, DecoderKind, TIE_TOLERANCE};
pub use sampling::{mix_seed, sample_multinomial, sample_output_type, sample_output_type_seeded, trial_rng};
pub use trials::{cell_seed, run_trial, simulate_error, sweep, wilson_interval, SweepCell, TrialOutcome, Z_95};
