use alloc::vec::Vec;

use super::law::{ytype_law_given_a, YTypeLaw};
use crate::channel::ChannelModel;
use crate::math::{ln, LogFactorials};
use crate::ntype::{enumerate_ntypes, multinomial_log_prob_with, NTypeVector};
use crate::prob::{kl_unchecked, mix_rows};
use crate::{Error, Result};

/// Largest tolerated disagreement between the two routes.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// `D(P^n ∘ U ‖ Q^n)` for `U` uniform on a type class, computed directly
/// and as `n D(P_Y‖Q) + gap`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub n: u32,
    pub pi: NTypeVector,
    pub q: Vec<f64>,
    /// `P_Y = μ(π)`.
    pub p_y: Vec<f64>,
    /// `n D(P_Y ‖ Q)`.
    pub term_iid: f64,
    /// `E[ln(ℙ[A=1 | Y^n] / ℙ[A=1]) | A=1]`; does not depend on `Q`.
    pub gap: f64,
    /// `Σ_m ℙ[m|A=1] (ln ℙ[y^n|A=1] − ln Q^n(y^n))` summed over output types.
    pub direct: f64,
    /// `|direct − term_iid − gap|`; zero when the divergence is infinite.
    pub residual: f64,
    /// Output symbols reachable under `π` on which `Q` vanishes.
    pub infinite_symbols: Vec<usize>,
}

impl DivergenceReport {
    pub fn is_infinite(&self) -> bool {
        !self.infinite_symbols.is_empty()
    }
}

/// Both routes with the residual checked against [`RESIDUAL_TOLERANCE`].
pub fn divergence_exact(pi: &NTypeVector, ch: &ChannelModel, q: &[f64]) -> Result<DivergenceReport> {
    let report = divergence_exact_unchecked(pi, ch, q)?;
    if report.residual > RESIDUAL_TOLERANCE {
        return Err(Error::Residual(report.residual));
    }
    Ok(report)
}

/// Both routes; the caller decides what residual is acceptable.
pub fn divergence_exact_unchecked(pi: &NTypeVector, ch: &ChannelModel, q: &[f64]) -> Result<DivergenceReport> {
    if q.len() != ch.k() {
        return Err(Error::Dimension { expected: ch.k(), got: q.len() });
    }
    let (law, _) = ytype_law_given_a(pi, ch)?;
    Ok(report_from_law(pi, ch, q, &law))
}

pub(crate) fn report_from_law(pi: &NTypeVector, ch: &ChannelModel, q: &[f64], law: &YTypeLaw) -> DivergenceReport {
    let n = pi.n();
    let lf = LogFactorials::new(n as usize);
    let p_y = mix_rows(&pi.frequencies(), ch.rows());
    let gap = gap_from_law(law, &p_y, &lf);
    let infinite_symbols: Vec<usize> = (0..q.len()).filter(|&j| p_y[j] > 0.0 && q[j] <= 0.0).collect();
    if !infinite_symbols.is_empty() {
        return DivergenceReport {
            n,
            pi: pi.clone(),
            q: q.to_vec(),
            p_y,
            term_iid: f64::INFINITY,
            gap,
            direct: f64::INFINITY,
            residual: 0.0,
            infinite_symbols,
        };
    }
    let log_q: Vec<f64> = q.iter().map(|&x| if x > 0.0 { ln(x) } else { 0.0 }).collect();
    let mut direct = 0.0;
    for (m, l) in &law.entries {
        let per_seq = l - lf.ln_multinomial(m);
        let log_qn: f64 = m.iter().zip(&log_q).map(|(&c, lq)| c as f64 * lq).sum();
        direct += crate::math::exp(*l) * (per_seq - log_qn);
    }
    let term_iid = n as f64 * kl_unchecked(&p_y, q);
    DivergenceReport {
        n,
        pi: pi.clone(),
        q: q.to_vec(),
        p_y,
        term_iid,
        gap,
        direct,
        residual: (direct - term_iid - gap).abs(),
        infinite_symbols,
    }
}

/// `Σ_m ℙ[m|A=1] ln(ℙ[m|A=1] / ℙ_{iid}[m])`, which equals the conditional
/// expectation of `ln(ℙ[A=1|Y^n]/ℙ[A=1])` by Bayes' rule.
pub(crate) fn gap_from_law(law: &YTypeLaw, p_y: &[f64], lf: &LogFactorials) -> f64 {
    law.entries
        .iter()
        .map(|(m, l)| {
            let iid = multinomial_log_prob_with(lf, m, p_y).ln();
            crate::math::exp(*l) * (l - iid)
        })
        .sum()
}

/// The gap term alone.
pub fn gap(pi: &NTypeVector, ch: &ChannelModel) -> Result<f64> {
    let (law, _) = ytype_law_given_a(pi, ch)?;
    let p_y = mix_rows(&pi.frequencies(), ch.rows());
    Ok(gap_from_law(&law, &p_y, &LogFactorials::new(pi.n() as usize)))
}

/// How `Q` is chosen when profiling.
#[derive(Debug, Clone, PartialEq)]
pub enum QMode {
    /// `Q = P_Y(π)` for each `π`.
    Marginal,
    Fixed(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub n: u32,
    /// The maximizing type (first in lexicographic order on ties).
    pub worst_pi: NTypeVector,
    pub gap: f64,
    /// Full divergence at the maximizing type under the chosen `Q`.
    pub divergence: f64,
}

/// Worst-case gap over all `n`-types, for each `n`.
pub fn gap_profile(ch: &ChannelModel, mode: &QMode, n_list: &[u32]) -> Result<Vec<GapRow>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut best: Option<(NTypeVector, f64)> = None;
        for pi in enumerate_ntypes(n, ch.q())? {
            let g = gap(&pi, ch)?;
            if best.as_ref().is_none_or(|(_, b)| g > *b) {
                best = Some((pi, g));
            }
        }
        let (worst_pi, g) = best.expect("at least one type");
        let q = match mode {
            QMode::Marginal => mix_rows(&worst_pi.frequencies(), ch.rows()),
            QMode::Fixed(q) => q.clone(),
        };
        let divergence = divergence_exact_unchecked(&worst_pi, ch, &q)?.direct;
        rows.push(GapRow { n, worst_pi, gap: g, divergence });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessRow {
    pub n: u32,
    /// Gap for the BSC with crossover `1/n` and `π = (n/2, n/2)`.
    pub gap: f64,
    /// Same `π` through the noiseless binary channel.
    pub identity_gap: f64,
}

/// Gap of the binary symmetric channel with crossover `1/n` at the
/// balanced type, next to the noiseless comparison.
pub fn tightness_probe(n_list: &[u32]) -> Result<Vec<TightnessRow>> {
    let id = ChannelModel::new(alloc::vec![alloc::vec![1.0, 0.0], alloc::vec![0.0, 1.0]])?;
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidParameter(alloc::format!("tightness probe needs even n, got {n}")));
        }
        let e = 1.0 / n as f64;
        let bsc = ChannelModel::new(alloc::vec![alloc::vec![1.0 - e, e], alloc::vec![e, 1.0 - e]])?;
        let pi = NTypeVector::new(alloc::vec![n / 2, n / 2])?;
        out.push(TightnessRow { n, gap: gap(&pi, &bsc)?, identity_gap: gap(&pi, &id)? });
    }
    Ok(out)
}
