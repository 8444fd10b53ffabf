//! `n`-types: integer count vectors summing to `n`.

use alloc::vec::Vec;

use crate::math::{binomial, ln, LogFactorials, LogProb};
use crate::prob::ProbVector;
use crate::{Error, Result};

/// Largest number of items any enumeration in this crate will materialize.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

/// Counts `(c_1, …, c_q)` with `Σ c_i = n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NTypeVector {
    counts: Vec<u32>,
    n: u32,
}

impl NTypeVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidParameter("type over an empty alphabet".into()));
        }
        let n = counts.iter().try_fold(0u32, |acc, &c| acc.checked_add(c));
        match n {
            Some(0) => Err(Error::InvalidParameter("type with n = 0".into())),
            Some(n) => Ok(Self { counts, n }),
            None => Err(Error::InvalidParameter("type counts overflow".into())),
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.counts.len()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    pub fn to_prob(&self) -> ProbVector {
        ProbVector::from_counts(&self.counts).expect("n ≥ 1")
    }

    /// Number of nonzero counts.
    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn into_counts(self) -> Vec<u32> {
        self.counts
    }
}

/// Lexicographically ascending compositions of `n` into `q` nonnegative
/// parts. Yields nothing when `q = 0`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u32>,
    done: bool,
}

impl Compositions {
    pub fn new(n: u32, q: usize) -> Self {
        let mut current = alloc::vec![0; q];
        if let Some(last) = current.last_mut() {
            *last = n;
        }
        Self { current, done: q == 0 }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let q = self.current.len();
        // The successor bumps the rightmost position that still has mass to
        // its right and pushes the remaining mass to the last slot.
        let mut tail = 0u32;
        let mut bumped = false;
        for i in (0..q.saturating_sub(1)).rev() {
            tail += self.current[i + 1];
            if tail > 0 {
                self.current[i] += 1;
                for c in &mut self.current[i + 1..] {
                    *c = 0;
                }
                self.current[q - 1] = tail - 1;
                bumped = true;
                break;
            }
        }
        if !bumped {
            self.done = true;
        }
        Some(out)
    }
}

/// `binom(n + q − 1, q − 1)`, saturating.
pub fn count_ntypes(n: u32, q: usize) -> u128 {
    if q == 0 {
        return 0;
    }
    binomial(n as u64 + q as u64 - 1, q as u64 - 1)
}

/// All `n`-types on `q` symbols in lexicographic order.
pub fn enumerate_ntypes(n: u32, q: usize) -> Result<Vec<NTypeVector>> {
    if n == 0 || q == 0 {
        return Err(Error::InvalidParameter("enumeration needs n ≥ 1 and q ≥ 1".into()));
    }
    let count = count_ntypes(n, q);
    if count > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { count, limit: ENUMERATION_LIMIT });
    }
    Ok(Compositions::new(n, q).map(|counts| NTypeVector { counts, n }).collect())
}

/// `ln( n!/Π c_i! · Π p_i^{c_i} )`.
pub fn multinomial_log_prob(t: &NTypeVector, p: &[f64]) -> Result<LogProb> {
    if t.q() != p.len() {
        return Err(Error::Dimension { expected: t.q(), got: p.len() });
    }
    let lf = LogFactorials::new(t.n() as usize);
    Ok(multinomial_log_prob_with(&lf, t.counts(), p))
}

pub(crate) fn multinomial_log_prob_with(lf: &LogFactorials, counts: &[u32], p: &[f64]) -> LogProb {
    let mut acc = lf.ln_multinomial(counts);
    for (&c, &pi) in counts.iter().zip(p) {
        if c == 0 {
            continue;
        }
        if pi <= 0.0 {
            return LogProb::ZERO;
        }
        acc += c as f64 * ln(pi);
    }
    LogProb::new(acc.min(0.0))
}

/// `ln |T_n(t)| = ln( n!/Π c_i! )`.
pub fn log_type_class_size(t: &NTypeVector) -> f64 {
    LogFactorials::new(t.n() as usize).ln_multinomial(t.counts())
}
