use alloc::vec::Vec;

use super::{dedupe, simplex_net_with_gamma, DEFAULT_GAMMA};
use crate::channel::ChannelModel;
use crate::math::ln;
use crate::ntype::Compositions;
use crate::prob::{kl_unchecked, mix_rows};
use crate::{Error, Result};

/// A net over `conv(rows)`, the set of output laws a channel can produce.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceNet {
    /// Rank of the channel; the simplex nets live in `Δ_{ell−1}`.
    pub ell: usize,
    pub eps: f64,
    pub gamma: f64,
    pub centers: Vec<Vec<f64>>,
    /// For each center, the row subset whose simplex first produced it.
    pub corners: Vec<Vec<usize>>,
    /// Size of the simplex net imaged through each row subset.
    pub simplex_size: usize,
}

impl SubspaceNet {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn log_size(&self) -> f64 {
        ln(self.len() as f64)
    }
}

pub fn subspace_net(ch: &ChannelModel, eps: f64) -> Result<SubspaceNet> {
    subspace_net_with_gamma(ch, eps, DEFAULT_GAMMA)
}

/// Images a `Δ_{ℓ−1}` net through every map sending the corners to `ℓ`
/// rows of the channel.
///
/// Every point of `conv(rows)` lies in one of these sub-simplices
/// (Carathéodory inside the `ℓ`-dimensional span), and a stochastic map
/// does not increase divergence, so each image inherits the radius.
pub fn subspace_net_with_gamma(ch: &ChannelModel, eps: f64, gamma: f64) -> Result<SubspaceNet> {
    let ell = ch.rank();
    let q = ch.q();
    let simplex: Vec<Vec<f64>> = if ell >= 2 {
        simplex_net_with_gamma(ell, eps, gamma)?.centers
    } else {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter(alloc::format!("eps must lie in (0, 1], got {eps}")));
        }
        alloc::vec![alloc::vec![1.0]]
    };
    let mut centers = Vec::new();
    let mut tags = Vec::new();
    for subset in subsets(q, ell) {
        let rows: Vec<Vec<f64>> = subset.iter().map(|&i| ch.row(i).to_vec()).collect();
        for c in &simplex {
            centers.push(mix_rows(c, &rows));
            tags.push(subset.clone());
        }
    }
    // dedupe while keeping the tag of the first occurrence
    let kept = dedupe(centers.clone());
    let mut corners = Vec::with_capacity(kept.len());
    let mut j = 0;
    for (c, tag) in centers.iter().zip(tags) {
        if j < kept.len() && *c == kept[j] {
            corners.push(tag);
            j += 1;
        }
    }
    Ok(SubspaceNet { ell, eps, gamma, centers: kept, corners, simplex_size: simplex.len() })
}

/// The radius-`1/n` net used in the mutual-information bound.
pub fn net_for_n(ch: &ChannelModel, n: u32) -> Result<SubspaceNet> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    subspace_net(ch, 1.0 / n as f64)
}

/// Max over input lattice points `π = t/m` of the distance from `πP` to the
/// nearest center.
pub fn subspace_covering_radius(net: &SubspaceNet, ch: &ChannelModel, m: u32) -> f64 {
    let mf = m as f64;
    let mut worst = 0.0f64;
    for t in Compositions::new(m, ch.q()) {
        let pi: Vec<f64> = t.iter().map(|&c| c as f64 / mf).collect();
        let mu = mix_rows(&pi, ch.rows());
        let best = net.centers.iter().fold(f64::INFINITY, |b, c| b.min(kl_unchecked(&mu, c)));
        worst = worst.max(best);
    }
    worst
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, size, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, size, 0, &mut cur, &mut out);
    out
}
