//! Exact output-type laws and the divergence of a type-class input.
//!
//! Let `U` be uniform on the type class `T_n(π)` and let `Y^n` be its image
//! through the channel. Since `Y^n` is exchangeable, every quantity here is
//! a sum over output types `m`, never over sequences. With `A` the event
//! that an i.i.d.(`π`) input lands in `T_n(π)`,
//!
//! `D(P^n ∘ U ‖ Q^n) = n D(P_Y‖Q) + E[ln(ℙ[A=1|Y^n] / ℙ[A=1]) | A=1]`,
//!
//! and [`divergence_exact`] evaluates both sides independently.

mod divergence;
mod law;
mod marginal;
pub mod rational;

pub use divergence::{
    divergence_exact, divergence_exact_unchecked, gap, gap_profile, tightness_probe, DivergenceReport, GapRow, QMode,
    TightnessRow, RESIDUAL_TOLERANCE,
};
pub use law::{joint_count_enumerate, prob_a_given_ytype, ytype_law_given_a, ytype_law_iid, Conditioning, YTypeLaw};
pub use marginal::{marginal_divergence, marginal_law, mutual_information_uniform_types};
