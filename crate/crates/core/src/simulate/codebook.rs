use alloc::format;
use alloc::vec::Vec;

use crate::channel::{ChannelClass, ChannelModel};
use crate::linalg;
use crate::math::{binomial, ceil, ln, powf, round, sqrt};
use crate::ntype::{Compositions, NTypeVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodebookKind {
    Grid,
    BlockTwoStep,
}

impl CodebookKind {
    pub fn name(self) -> &'static str {
        match self {
            CodebookKind::Grid => "grid",
            CodebookKind::BlockTwoStep => "block-two-step",
        }
    }
}

/// Distinct input types, one per message.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    pub n: u32,
    pub codewords: Vec<NTypeVector>,
    pub kind: CodebookKind,
    /// Lattice step between neighbouring codewords (grid part).
    pub spacing: u32,
    /// Whether `spacing ≥ ⌈√(n ln n)⌉`.
    pub separated: bool,
    /// Number of distinct stems (block code only; 1 for grids).
    pub stems: u128,
}

impl Codebook {
    pub fn m(&self) -> usize {
        self.codewords.len()
    }

    /// `ln M / ln n`.
    pub fn rate(&self) -> f64 {
        ln(self.m() as f64) / ln(self.n as f64)
    }
}

/// `round(n^R)`, at least 2 or an error.
pub fn message_count(n: u32, rate: f64) -> Result<u64> {
    if !(rate > 0.0 && rate.is_finite()) || n < 2 {
        return Err(Error::InvalidParameter(format!("need R > 0 and n ≥ 2, got R = {rate}, n = {n}")));
    }
    let m = round(powf(n as f64, rate));
    if m < 2.0 {
        return Err(Error::InfeasibleRate(format!("n^R = {m} gives fewer than two messages")));
    }
    if m > 1e15 {
        return Err(Error::InfeasibleRate(format!("n^R = {m} is too many messages")));
    }
    Ok(m as u64)
}

/// `⌈√(n ln n)⌉`.
pub fn target_spacing(n: u32) -> u32 {
    let nf = n as f64;
    ceil(sqrt(nf * ln(nf))) as u32
}

/// Greedy choice of rows that are linearly independent, in index order.
pub fn independent_rows(rows: &[Vec<f64>], candidates: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<f64>> = Vec::new();
    for &i in candidates {
        picked.push(rows[i].clone());
        if linalg::rank(&picked, crate::channel::DEFAULT_RANK_TOLERANCE) == picked.len() {
            chosen.push(i);
        } else {
            picked.pop();
        }
    }
    chosen
}

/// `m` points spread over `lattice` (every index when `m ≥ len`).
fn spread(len: u128, m: u128) -> Vec<u128> {
    if m >= len {
        return (0..len).collect();
    }
    if m == 1 {
        return alloc::vec![(len - 1) / 2];
    }
    // round(i (len − 1) / (m − 1)), strictly increasing because len > m
    (0..m).map(|i| (2 * i * (len - 1) + (m - 1)) / (2 * (m - 1))).collect()
}

/// Grid tails on the `active` inputs for block length `n`: returns the
/// count vectors over `active`, the spacing, and whether it met the target.
fn grid_points(r: usize, n: u32, m: u64) -> Result<(Vec<Vec<u32>>, u32, bool)> {
    debug_assert!(r >= 2);
    let ell = (r - 1) as u64;
    // smallest s with C(s + ℓ, ℓ) ≥ m
    let mut s = 1u64;
    while binomial(s + ell, ell) < m as u128 {
        s += 1;
        if s > n as u64 {
            return Err(Error::InfeasibleRate(format!("{m} messages need lattice resolution above n = {n}")));
        }
    }
    let target = target_spacing(n);
    let step = target.min((n as u64 / s) as u32);
    if step == 0 {
        return Err(Error::InfeasibleRate(format!("{m} messages do not fit in n = {n}")));
    }
    // the unused mass is split evenly so the grid sits at the centre
    let rem = n - (s as u32) * step;
    let base: Vec<u32> = (0..r as u32).map(|j| rem / r as u32 + u32::from(j < rem % r as u32)).collect();
    let all: Vec<Vec<u32>> = Compositions::new(s as u32, r).collect();
    let points = spread(all.len() as u128, m as u128)
        .into_iter()
        .map(|i| all[i as usize].iter().zip(&base).map(|(t, b)| b + t * step).collect())
        .collect();
    Ok((points, step, step >= target))
}

/// `M = round(n^R)` types on a lattice spanned by linearly independent
/// inputs.
///
/// The lattice lives on `rank` active inputs; its resolution `s` is the
/// smallest with at least `M` points, and neighbouring codewords differ by
/// `⌈√(n ln n)⌉` counts per active coordinate (or the largest step that
/// fits). Type fluctuations are of order `√n`, so the extra `√(ln n)`
/// factor makes pairwise confusions vanish as `n` grows.
pub fn build_grid_codebook(ch: &ChannelModel, n: u32, rate: f64) -> Result<Codebook> {
    let m = message_count(n, rate)?;
    let all: Vec<usize> = (0..ch.q()).collect();
    let active = independent_rows(ch.rows(), &all);
    if active.len() < 2 {
        return Err(Error::InfeasibleRate("rank-one channel: outputs carry no information".into()));
    }
    let (points, spacing, separated) = grid_points(active.len(), n, m)?;
    let codewords = points
        .into_iter()
        .map(|p| {
            let mut c = alloc::vec![0u32; ch.q()];
            for (&i, v) in active.iter().zip(p) {
                c[i] = v;
            }
            NTypeVector::new(c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Codebook { n, codewords, kind: CodebookKind::Grid, spacing, separated, stems: 1 })
}

/// The `idx`-th `r`-subset of `{1, …, n}` in lexicographic order.
fn unrank_subset(n: u64, r: u64, mut idx: u128) -> Vec<u64> {
    let mut out = Vec::with_capacity(r as usize);
    let mut next = 1u64;
    for left in (1..=r).rev() {
        loop {
            // subsets starting with `next`
            let with = binomial(n - next, left - 1);
            if idx < with {
                out.push(next);
                next += 1;
                break;
            }
            idx -= with;
            next += 1;
        }
    }
    out
}

/// Two-step code for block-diagonal channels with strictly positive blocks.
///
/// `n` is rounded down to a multiple of `2β`; every block reserves
/// `n/(2β)` positions. The stem splits the other `n/2` positions into
/// `(d_1, …, d_β)` with `d_1, …, d_{β−1} ≥ 1`, one of `C(n/2, β−1)`
/// choices; block `b` then holds `n/(2β) + d_b` symbols, arranged by a grid
/// tail when the block has rank at least two. When `round(n^R)` is below
/// the number of combinations, an evenly spread subset is kept.
pub fn build_block_code(ch: &ChannelModel, n: u32, rate: f64) -> Result<Codebook> {
    let blocks = match ch.class() {
        ChannelClass::BlockDiagonal(b) if b.all_strictly_positive() => b.blocks.clone(),
        ChannelClass::StrictlyPositive => alloc::vec![crate::channel::Block {
            inputs: (0..ch.q()).collect(),
            outputs: (0..ch.k()).collect(),
            strictly_positive: true,
        }],
        _ => return Err(Error::Precondition("block code needs strictly positive blocks".into())),
    };
    let beta = blocks.len() as u32;
    let n_used = n - n % (2 * beta);
    if n_used == 0 {
        return Err(Error::InfeasibleRate(format!("n = {n} is smaller than 2·beta")));
    }
    let target = message_count(n_used, rate)?;
    let reserved = n_used / (2 * beta);
    let half = (n_used / 2) as u64;
    let stems = binomial(half, (beta - 1) as u64);
    let actives: Vec<Vec<usize>> = blocks.iter().map(|b| independent_rows(ch.rows(), &b.inputs)).collect();
    let tail_blocks: Vec<usize> = (0..blocks.len()).filter(|&b| actives[b].len() >= 2).collect();

    // Messages left for the tails after the stems are used up.
    let per_tail: u64 = if (target as u128) <= stems || tail_blocks.is_empty() {
        1
    } else {
        let need = target as f64 / stems as f64;
        ceil(powf(need, 1.0 / tail_blocks.len() as f64)) as u64
    };
    let total = stems.saturating_mul((per_tail as u128).saturating_pow(tail_blocks.len() as u32));

    let mut spacing = u32::MAX;
    let mut separated = true;
    let mut codewords = Vec::new();
    for idx in spread(total, target as u128) {
        let stem_idx = idx % stems;
        let mut tail_idx = idx / stems;
        let cuts = unrank_subset(half, (beta - 1) as u64, stem_idx);
        let mut counts = alloc::vec![0u32; ch.q()];
        let mut prev = 0u64;
        for (b, block) in blocks.iter().enumerate() {
            let end = if b + 1 < blocks.len() { cuts[b] } else { half };
            let nb = reserved + (end - prev) as u32;
            prev = end;
            let active = &actives[b];
            if active.len() >= 2 && per_tail >= 2 {
                let (pts, step, sep) = grid_points(active.len(), nb, per_tail)?;
                spacing = spacing.min(step);
                separated &= sep;
                let pick = (tail_idx % per_tail as u128) as usize;
                tail_idx /= per_tail as u128;
                for (&i, v) in active.iter().zip(&pts[pick.min(pts.len() - 1)]) {
                    counts[i] = *v;
                }
            } else {
                // single direction: park the block's mass on its first input
                counts[block.inputs[0]] = nb;
            }
        }
        codewords.push(NTypeVector::new(counts)?);
    }
    if spacing == u32::MAX {
        spacing = 0;
    }
    Ok(Codebook { n: n_used, codewords, kind: CodebookKind::BlockTwoStep, spacing, separated, stems })
}
