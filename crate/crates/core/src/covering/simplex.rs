use alloc::vec::Vec;

use super::{dedupe, scalar_net};
use crate::math::{ln, powf};
use crate::ntype::Compositions;
use crate::prob::kl_unchecked;
use crate::{Error, Result};

/// Slack factor between the grid parameter and the certified radius.
pub const DEFAULT_GAMMA: f64 = 18.0;

/// A finite set of centers in `Δ_{k−1}` with a declared radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexNet {
    pub k: usize,
    pub eps: f64,
    pub gamma: f64,
    pub centers: Vec<Vec<f64>>,
    /// For nets built by [`simplex_net`]: the values taken by the last
    /// coordinate at recursion levels `2, …, k`. Every center is then a
    /// product choice, which lets [`covering_radius`] run a dynamic program
    /// instead of a pairwise search.
    levels: Option<Vec<Vec<f64>>>,
}

impl SimplexNet {
    /// An arbitrary center set; its radius is whatever `covering_radius`
    /// measures.
    pub fn from_centers(k: usize, eps: f64, centers: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(bad) = centers.iter().find(|c| c.len() != k) {
            return Err(Error::Dimension { expected: k, got: bad.len() });
        }
        Ok(Self { k, eps, gamma: 1.0, centers, levels: None })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// The constant `c` solving `|N| = c^{k−1} ((k−1)/ε)^{(k−1)/2}`.
    pub fn measured_c(&self) -> f64 {
        let d = (self.k - 1) as f64;
        powf(self.len() as f64 / powf(d / self.eps, d / 2.0), 1.0 / d)
    }

    /// Last-coordinate values per recursion level, if the net is a product.
    pub fn level_sets(&self) -> Option<&[Vec<f64>]> {
        self.levels.as_deref()
    }
}

pub fn simplex_net(k: usize, eps: f64) -> Result<SimplexNet> {
    simplex_net_with_gamma(k, eps, DEFAULT_GAMMA)
}

/// Builds `Λ_k(ε/γ)`.
///
/// Level 2 holds `(μ, 1 − μ)` for `μ ∈ Λ(2e/k)`; each later level `j` lifts
/// the previous centers by `λ ∈ Λ(e/k)` into `((1−λ) q, λ)`, where `e = ε/γ`.
pub fn simplex_net_with_gamma(k: usize, eps: f64, gamma: f64) -> Result<SimplexNet> {
    if k < 2 {
        return Err(Error::InvalidParameter(alloc::format!("simplex net needs k ≥ 2, got {k}")));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("eps must lie in (0, 1], got {eps}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("gamma must be positive, got {gamma}")));
    }
    let e = eps / gamma;
    let kf = k as f64;
    let base = scalar_net(2.0 * e / kf)?.points;
    let mut centers: Vec<Vec<f64>> = base.iter().map(|&mu| alloc::vec![mu, 1.0 - mu]).collect();
    let mut levels = alloc::vec![base.iter().map(|mu| 1.0 - mu).collect::<Vec<f64>>()];
    if k > 2 {
        let lift = scalar_net(e / kf)?.points;
        for _ in 3..=k {
            let mut next = Vec::with_capacity(centers.len() * lift.len());
            for &lambda in &lift {
                for q in &centers {
                    let mut c: Vec<f64> = q.iter().map(|x| (1.0 - lambda) * x).collect();
                    c.push(lambda);
                    next.push(c);
                }
            }
            centers = next;
            levels.push(lift.clone());
        }
    }
    Ok(SimplexNet { k, eps, gamma, centers: dedupe(centers), levels: Some(levels) })
}

/// `d(x‖λ) = D((x, 1−x) ‖ (λ, 1−λ))`.
pub fn binary_divergence(x: f64, lambda: f64) -> f64 {
    let mut d = 0.0;
    if x > 0.0 {
        d += if lambda > 0.0 { x * ln(x / lambda) } else { return f64::INFINITY };
    }
    if x < 1.0 {
        d += if lambda < 1.0 { (1.0 - x) * ln((1.0 - x) / (1.0 - lambda)) } else { return f64::INFINITY };
    }
    d.max(0.0)
}

/// Max over the lattice `{t/m}` of the distance to the nearest center.
///
/// Product nets from [`simplex_net`] use the chain rule
/// `D(p‖((1−λ)q, λ)) = d(p_k‖λ) + (1 − p_k) D(p'‖q)`, which separates the
/// minimum over centers level by level; the lattice maximum then follows a
/// recursion over the remaining mass, exact and `O(k m² |Λ|)`. Other nets
/// fall back to [`covering_radius_brute`].
pub fn covering_radius(net: &SimplexNet, m: u32) -> Result<f64> {
    if m < 1 {
        return Err(Error::InvalidParameter("lattice resolution must be ≥ 1".into()));
    }
    match &net.levels {
        Some(levels) => Ok(product_radius(levels, m)),
        None => covering_radius_brute(&net.centers, net.k, m),
    }
}

fn product_radius(levels: &[Vec<f64>], m: u32) -> f64 {
    let m = m as usize;
    // prev[r] = worst case over lattice points of resolution r one level down
    let mut prev = alloc::vec![0.0f64; m + 1];
    for (depth, set) in levels.iter().enumerate() {
        let top = depth + 1 == levels.len();
        let mut cur = alloc::vec![0.0f64; m + 1];
        let range = if top { m..=m } else { 1..=m };
        for r in range {
            let rf = r as f64;
            let mut worst = 0.0f64;
            for t in 0..=r {
                let x = t as f64 / rf;
                let head = set.iter().fold(f64::INFINITY, |best, &l| best.min(binary_divergence(x, l)));
                let v = head + (1.0 - x) * prev[r - t];
                worst = worst.max(v);
            }
            cur[r] = worst;
        }
        prev = cur;
    }
    prev[m]
}

/// Exhaustive max-min over every lattice point and every center.
pub fn covering_radius_brute(centers: &[Vec<f64>], k: usize, m: u32) -> Result<f64> {
    if centers.is_empty() {
        return Err(Error::InvalidParameter("empty net".into()));
    }
    let mf = m as f64;
    let mut worst = 0.0f64;
    let mut p = alloc::vec![0.0; k];
    for t in Compositions::new(m, k) {
        for (pi, &ti) in p.iter_mut().zip(&t) {
            *pi = ti as f64 / mf;
        }
        let best = centers.iter().fold(f64::INFINITY, |b, c| b.min(kl_unchecked(&p, c)));
        worst = worst.max(best);
    }
    Ok(worst)
}
