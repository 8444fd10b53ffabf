//! KL-divergence ε-nets.
//!
//! A net `N ⊂ Δ_{k−1}` has radius `ε` when every `p` in the simplex has some
//! center `c ∈ N` with `D(p‖c) ≤ ε`. The construction here is the square-root
//! grid `Λ(ε)` on `[0, 1]`, lifted one coordinate at a time. Nets over the
//! image of a channel are obtained by pushing simplex nets through stochastic
//! maps, which cannot increase divergence.

mod scalar;
mod simplex;
mod subspace;

pub use scalar::{scalar_net, ScalarNet};
pub use simplex::{
    binary_divergence, covering_radius, covering_radius_brute, simplex_net, simplex_net_with_gamma, SimplexNet,
    DEFAULT_GAMMA,
};
pub use subspace::{net_for_n, subspace_covering_radius, subspace_net, subspace_net_with_gamma, SubspaceNet};

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Whether `point` is a convex combination of `rows` within `tol`.
pub fn in_hull(point: &[f64], rows: &[Vec<f64>], tol: f64) -> bool {
    crate::linalg::in_convex_hull(point, rows, tol)
}

/// Drops points within `1e-12` (componentwise, after quantization) of an
/// earlier point, keeping the first occurrence.
pub(crate) fn dedupe(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut seen = BTreeSet::new();
    points
        .into_iter()
        .filter(|p| seen.insert(p.iter().map(|x| crate::math::round(x * 1e12) as i64).collect::<Vec<i64>>()))
        .collect()
}
