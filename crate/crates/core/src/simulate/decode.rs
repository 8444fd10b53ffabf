use alloc::vec::Vec;

use crate::channel::ChannelModel;
use crate::exact::{ytype_law_given_a, YTypeLaw};
use crate::prob::{kl_unchecked, mix_rows};
use crate::Result;

use super::codebook::Codebook;

/// Scores within this many nats count as tied, so that exact ties broken by
/// rounding still go to the lowest index.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    /// `argmin_w D(y/n ‖ μ(w/n))`.
    MinDivergence,
    /// `argmax_w ℙ[y-type | w]` from exact type laws.
    ExactMl,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::MinDivergence => "min-divergence",
            DecoderKind::ExactMl => "exact-ml",
        }
    }
}

/// A decoder with its per-codeword tables built once.
#[derive(Debug, Clone)]
pub enum Decoder {
    MinDivergence { means: Vec<Vec<f64>> },
    ExactMl { laws: Vec<YTypeLaw> },
}

impl Decoder {
    pub fn new(kind: DecoderKind, book: &Codebook, ch: &ChannelModel) -> Result<Self> {
        Ok(match kind {
            DecoderKind::MinDivergence => Decoder::MinDivergence {
                means: book.codewords.iter().map(|w| mix_rows(&w.frequencies(), ch.rows())).collect(),
            },
            DecoderKind::ExactMl => Decoder::ExactMl {
                laws: book
                    .codewords
                    .iter()
                    .map(|w| ytype_law_given_a(w, ch).map(|(law, _)| law))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// Index of the decoded message. Ties go to the lowest index; a `y` no
    /// codeword can produce decodes to 0.
    pub fn decode(&self, y: &[u32]) -> usize {
        match self {
            Decoder::MinDivergence { means } => {
                let n: u32 = y.iter().sum();
                let freq: Vec<f64> = y.iter().map(|&c| c as f64 / n as f64).collect();
                let mut best = (0, f64::INFINITY);
                for (i, mu) in means.iter().enumerate() {
                    let d = kl_unchecked(&freq, mu);
                    if d < best.1 - TIE_TOLERANCE {
                        best = (i, d);
                    }
                }
                best.0
            }
            Decoder::ExactMl { laws } => {
                let mut best = (0, f64::NEG_INFINITY);
                for (i, law) in laws.iter().enumerate() {
                    let lp = law.log_prob(y);
                    if lp > best.1 + TIE_TOLERANCE {
                        best = (i, lp);
                    }
                }
                best.0
            }
        }
    }
}

/// One-shot minimum-divergence decoding of an output type.
pub fn min_divergence_decode(y: &[u32], book: &Codebook, ch: &ChannelModel) -> usize {
    match Decoder::new(DecoderKind::MinDivergence, book, ch) {
        Ok(d) => d.decode(y),
        Err(_) => unreachable!("building the min-divergence tables cannot fail"),
    }
}

/// One-shot maximum-likelihood decoding from exact output-type laws.
pub fn exact_ml_decode(y: &[u32], book: &Codebook, ch: &ChannelModel) -> Result<usize> {
    Ok(Decoder::new(DecoderKind::ExactMl, book, ch)?.decode(y))
}
