use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::channel::ChannelModel;
use crate::math::{ln, LogFactorials, LogSumExp};
use crate::ntype::{count_ntypes, multinomial_log_prob_with, Compositions, NTypeVector, ENUMERATION_LIMIT};
use crate::{Error, Result};

/// Work limit for the row-by-row convolution (states × row compositions).
const CONVOLUTION_LIMIT: u128 = 1_000_000_000;

/// What a [`YTypeLaw`] is conditioned on.
#[derive(Debug, Clone, PartialEq)]
pub enum Conditioning {
    /// Input is a fixed sequence of this type (equivalently `A = 1`).
    InputType(NTypeVector),
    /// Outputs i.i.d. from the given law.
    Iid(Vec<f64>),
}

/// Law of the output type: `(m, ln ℙ[m])` for every reachable `m`, in
/// lexicographic order of `m`. Unreachable types are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct YTypeLaw {
    pub conditioning: Conditioning,
    pub n: u32,
    pub k: usize,
    /// `(m, ln ℙ[m])` sorted by `m`, reachable types only.
    pub entries: Vec<(Vec<u32>, f64)>,
}

impl YTypeLaw {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `ln ℙ[m]`, or `-∞` when `m` is unreachable.
    pub fn log_prob(&self, m: &[u32]) -> f64 {
        self.entries.binary_search_by(|(t, _)| t.as_slice().cmp(m)).map_or(f64::NEG_INFINITY, |i| self.entries[i].1)
    }

    pub fn prob(&self, m: &[u32]) -> f64 {
        crate::math::exp(self.log_prob(m))
    }

    /// `Σ_m ℙ[m]`; one up to rounding.
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, l)| crate::math::exp(*l)).sum()
    }
}

/// All `q × k` count matrices whose row `i` sums to `counts_i`.
pub fn joint_count_enumerate(pi: &NTypeVector, k: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be ≥ 1".into()));
    }
    let total = pi.counts().iter().fold(1u128, |acc, &c| acc.saturating_mul(count_ntypes(c, k)));
    if total > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { count: total, limit: ENUMERATION_LIMIT });
    }
    let mut out: Vec<Vec<Vec<u32>>> = alloc::vec![Vec::new()];
    for &c in pi.counts() {
        let rows: Vec<Vec<u32>> = Compositions::new(c, k).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                rows.iter().map(move |r| {
                    let mut m = prefix.clone();
                    m.push(r.clone());
                    m
                })
            })
            .collect();
    }
    Ok(out)
}

/// Output-type law given that the input is a fixed sequence of type `pi`.
///
/// Row `i` contributes an independent multinomial with `c_i` trials; the
/// law of the column sums is their convolution, accumulated one row at a
/// time in the log domain so no joint matrix is ever materialized.
///
/// Also returns `ln ℙ[A = 1]` for `X^n` i.i.d. from `pi/n`, which is the
/// multinomial mass of the type under its own frequencies.
pub fn ytype_law_given_a(pi: &NTypeVector, ch: &ChannelModel) -> Result<(YTypeLaw, f64)> {
    if pi.q() != ch.q() {
        return Err(Error::Dimension { expected: ch.q(), got: pi.q() });
    }
    let n = pi.n();
    let lf = LogFactorials::new(n as usize);
    let k = ch.k();
    let log_rows: Vec<Vec<f64>> = ch
        .rows()
        .iter()
        .map(|r| r.iter().map(|&p| if p > 0.0 { ln(p) } else { f64::NEG_INFINITY }).collect())
        .collect();

    let mut states: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
    states.insert(alloc::vec![0; k], 0.0);
    for (i, &c) in pi.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let comps = row_compositions(c, &log_rows[i], &lf);
        let work = (states.len() as u128).saturating_mul(comps.len() as u128);
        if work > CONVOLUTION_LIMIT {
            return Err(Error::TooLarge { count: work, limit: CONVOLUTION_LIMIT });
        }
        let mut next: BTreeMap<Vec<u32>, LogSumExp> = BTreeMap::new();
        for (m, lw) in &states {
            for (row, rw) in &comps {
                let key: Vec<u32> = m.iter().zip(row).map(|(a, b)| a + b).collect();
                next.entry(key).or_default().push(lw + rw);
            }
        }
        states = next.into_iter().map(|(m, acc)| (m, acc.value())).collect();
    }
    let entries: Vec<(Vec<u32>, f64)> = states.into_iter().map(|(m, l)| (m, l.min(0.0))).collect();
    let ln_prob_a = multinomial_log_prob_with(&lf, pi.counts(), &pi.frequencies()).ln();
    let law = YTypeLaw { conditioning: Conditioning::InputType(pi.clone()), n, k, entries };
    Ok((law, ln_prob_a))
}

/// Compositions of `c` over the outputs with positive probability, paired
/// with `ln( c!/Π N_j! Π p_j^{N_j} )`.
fn row_compositions(c: u32, log_row: &[f64], lf: &LogFactorials) -> Vec<(Vec<u32>, f64)> {
    let support: Vec<usize> = (0..log_row.len()).filter(|&j| log_row[j] > f64::NEG_INFINITY).collect();
    Compositions::new(c, support.len())
        .map(|part| {
            let mut full = alloc::vec![0u32; log_row.len()];
            let mut lw = lf.ln_multinomial(&part);
            for (&j, &cnt) in support.iter().zip(&part) {
                full[j] = cnt;
                lw += cnt as f64 * log_row[j];
            }
            (full, lw)
        })
        .collect()
}

/// Multinomial law of the type of `n` i.i.d. draws from `p`.
pub fn ytype_law_iid(p: &[f64], n: u32) -> Result<YTypeLaw> {
    let count = count_ntypes(n, p.len());
    if count > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { count, limit: ENUMERATION_LIMIT });
    }
    let lf = LogFactorials::new(n as usize);
    let entries = Compositions::new(n, p.len())
        .map(|m| {
            let l = multinomial_log_prob_with(&lf, &m, p).ln();
            (m, l)
        })
        .filter(|(_, l)| *l > f64::NEG_INFINITY)
        .collect();
    Ok(YTypeLaw { conditioning: Conditioning::Iid(p.to_vec()), n, k: p.len(), entries })
}

/// `ℙ[A = 1 | type(Y^n) = m] = ℙ[m | A = 1] ℙ[A = 1] / ℙ[m]`, where the
/// denominator is the multinomial mass of `m` under `P_Y = μ(π)` (inputs
/// i.i.d. from `π`). The value is the same for every `y^n` of type `m`.
pub fn prob_a_given_ytype(pi: &NTypeVector, ch: &ChannelModel, m: &[u32]) -> Result<f64> {
    let (law, ln_a) = ytype_law_given_a(pi, ch)?;
    if m.len() != ch.k() {
        return Err(Error::Dimension { expected: ch.k(), got: m.len() });
    }
    let l = law.log_prob(m);
    if l == f64::NEG_INFINITY {
        return Err(Error::UnreachableType);
    }
    let py = crate::prob::mix_rows(&pi.frequencies(), ch.rows());
    let lf = LogFactorials::new(pi.n() as usize);
    let denom = multinomial_log_prob_with(&lf, m, &py).ln();
    Ok(crate::math::exp(l + ln_a - denom).min(1.0))
}
