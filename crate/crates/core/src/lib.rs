//! Numerics for noisy permutation channels.
//!
//! A noisy permutation channel passes an `n`-letter input through a discrete
//! memoryless channel (DMC) and then shuffles the output uniformly. Only the
//! output *type* (the vector of symbol counts) carries information, so every
//! computation in this crate is phrased over types rather than sequences.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parallel drivers, file
//! formats and the command line live in the `permchan` companion crate.
//!
//! Layout:
//!
//! - [`prob`], [`ntype`], [`channel`], [`math`]: distributions, `n`-types,
//!   stochastic matrices and log-domain arithmetic.
//! - [`covering`]: KL-divergence ε-nets of the simplex and of the image of a
//!   channel, plus lattice certification of their radius.
//! - [`exact`]: exact output-type laws and the divergence between a
//!   type-class input pushed through the channel and a product distribution.
//! - [`bounds`]: closed-form capacity values and the analytic bounds that
//!   surround them.
//! - [`simulate`]: codebooks, decoders and seedable Monte-Carlo error
//!   estimation.
//!
//! All logarithms are natural; divergences are in nats.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod bounds;
pub mod channel;
pub mod covering;
mod error;
pub mod exact;
mod linalg;
pub mod math;
pub mod ntype;
pub mod prob;
pub mod rational;
pub mod simulate;

pub use channel::{classify_channel, numerical_rank, ChannelClass, ChannelModel};
pub use error::{Error, Result};
pub use math::LogProb;
pub use ntype::{enumerate_ntypes, log_type_class_size, multinomial_log_prob, NTypeVector};
pub use prob::{kl_divergence, output_marginal, ProbVector};
