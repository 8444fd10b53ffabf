//! Points of the probability simplex and the KL divergence between them.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Index;

use crate::channel::ChannelModel;
use crate::math::xlogx_over_y;
use crate::{Error, Result};

/// Tolerance on `Σ p_i = 1` for floating vectors.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// A distribution on `{0, …, len-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NotDistribution("empty vector".into()));
        }
        if let Some(bad) = entries.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::NotDistribution(format!("entry {bad} is not a probability")));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self(entries))
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(Error::NotDistribution("weights must be nonnegative with positive sum".into()));
        }
        Ok(Self(weights.iter().map(|w| w / sum).collect()))
    }

    /// The type `counts / n`.
    pub fn from_counts(counts: &[u32]) -> Result<Self> {
        let n: u64 = counts.iter().map(|&c| c as u64).sum();
        if n == 0 {
            return Err(Error::NotDistribution("all counts are zero".into()));
        }
        Ok(Self(counts.iter().map(|&c| c as f64 / n as f64).collect()))
    }

    pub fn uniform(len: usize) -> Self {
        Self(alloc::vec![1.0 / len as f64; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|p| *p > 0.0)
    }
}

impl Index<usize> for ProbVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for ProbVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `D(p‖q) = Σ p_i ln(p_i / q_i)` in nats.
///
/// Terms with `p_i = 0` contribute nothing; a term with `p_i > 0 = q_i`
/// makes the result `+∞`.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::Dimension { expected: p.len(), got: q.len() });
    }
    Ok(kl_unchecked(p, q))
}

#[inline]
pub(crate) fn kl_unchecked(p: &[f64], q: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        let t = xlogx_over_y(a, b);
        if t == f64::INFINITY {
            return f64::INFINITY;
        }
        d += t;
    }
    // rounding can leave tiny negatives when p ≈ q
    d.max(0.0)
}

/// The output law `P_Y(j) = Σ_i π_i p_ij`.
pub fn output_marginal(pi: &[f64], ch: &ChannelModel) -> Result<ProbVector> {
    if pi.len() != ch.q() {
        return Err(Error::Dimension { expected: ch.q(), got: pi.len() });
    }
    Ok(ProbVector(mix_rows(pi, ch.rows())))
}

pub(crate) fn mix_rows(weights: &[f64], rows: &[Vec<f64>]) -> Vec<f64> {
    let k = rows.first().map_or(0, |r| r.len());
    let mut out = alloc::vec![0.0; k];
    for (w, row) in weights.iter().zip(rows) {
        if *w == 0.0 {
            continue;
        }
        for (o, p) in out.iter_mut().zip(row) {
            *o += w * p;
        }
    }
    out
}
