use alloc::vec::Vec;

use crate::math::{exp, ln, ln_factorial, powf, sqrt};
use crate::ntype::NTypeVector;
use crate::{Error, Result};

/// Calibrated value of the universal constant in the Petrov
/// point-mass bound: the largest `max_w ℙ[Bin(n, 1/2) = w] · √(n/2)` over
/// `n ≤ 1000`. Recompute with [`calibrate_alpha`].
pub const PETROV_ALPHA: f64 = 0.564_048_553_804_754;

/// `max_{1 ≤ n ≤ n_max} C(n, ⌊n/2⌋) 2^{−n} √(n/2)`.
///
/// Fair coins maximize the point mass for a given variance proxy `n/2`,
/// so this is the smallest `α` for which the bound holds on that family.
pub fn calibrate_alpha(n_max: u32) -> f64 {
    (1..=n_max as u64)
        .map(|n| {
            let h = n / 2;
            let log_mass = ln_factorial(n) - ln_factorial(h) - ln_factorial(n - h) - n as f64 * ln(2.0);
            exp(log_mass) * sqrt(n as f64 / 2.0)
        })
        .fold(0.0, f64::max)
}

/// `α / √(Σ_i min(p_i, 1 − p_i))`: a bound on every point mass of a sum of
/// independent Bernoulli(`p_i`) variables. `+∞` when the variance proxy
/// vanishes.
pub fn petrov_bound(probs: &[f64], alpha: f64) -> f64 {
    let proxy: f64 = probs.iter().map(|&p| p.min(1.0 - p)).sum();
    if proxy <= 0.0 {
        f64::INFINITY
    } else {
        alpha / sqrt(proxy)
    }
}

/// `ℙ[N = nπ]` bound for `n` independent balls with relative bin weights
/// `rel_probs[i][b]`: `α^{q−1} / (n^{(q−1)/2} √B)` with
/// `B = c_*^{q−1} Π π_b / max π` and
/// `c_* = min_i (min_b p_ib/π_b) / (max_b p_ib/π_b)`.
pub fn balls_in_bins_bound(pi: &[f64], rel_probs: &[Vec<f64>], alpha: f64) -> Result<f64> {
    if pi.iter().any(|&p| p <= 0.0) {
        return Err(Error::Precondition("every bin needs a positive target share".into()));
    }
    if let Some(bad) = rel_probs.iter().find(|r| r.len() != pi.len()) {
        return Err(Error::Dimension { expected: pi.len(), got: bad.len() });
    }
    let q = pi.len() as f64;
    let n = rel_probs.len() as f64;
    let c_star = rel_probs
        .iter()
        .map(|row| {
            let ratios = row.iter().zip(pi).map(|(p, b)| p / b);
            let lo = ratios.clone().fold(f64::INFINITY, f64::min);
            let hi = ratios.fold(0.0, f64::max);
            lo / hi
        })
        .fold(1.0, f64::min);
    let pi_max = pi.iter().cloned().fold(0.0, f64::max);
    let b = powf(c_star, q - 1.0) * pi.iter().product::<f64>() / pi_max;
    if b <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(powf(alpha, q - 1.0) / (powf(n, (q - 1.0) / 2.0) * sqrt(b)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinTail {
    /// `ℙ[Y < E[Y]/5] ≤ 2 / n^{γ/4}`.
    pub bound: f64,
    /// `E[Y]/5`.
    pub floor: f64,
}

/// The Bernstein tail used for the erasure converse. Needs
/// `E[Y] > 2γ ln n`.
pub fn bernstein_tail(expected_y: f64, gamma: f64, n: f64) -> Result<BernsteinTail> {
    if !(n > 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("n must exceed 1, got {n}")));
    }
    let needed = 2.0 * gamma * ln(n);
    if !(expected_y > needed) {
        return Err(Error::Precondition(alloc::format!("E[Y] = {expected_y} does not exceed 2 gamma ln n = {needed}")));
    }
    Ok(BernsteinTail { bound: 2.0 / powf(n, gamma / 4.0), floor: expected_y / 5.0 })
}

/// `γ = 40q`, the choice that makes the erasure tail negligible.
pub fn bernstein_gamma(q: usize) -> f64 {
    40.0 * q as f64
}

/// Upper bound on `−ln ℙ[A = 1]` for a type `t` (i.i.d. draws from `t/n`
/// landing exactly on `t`), from the two-sided Robbins bounds on `n!`:
///
/// `−½ ln n + Σ_{c_i>0} ½ ln c_i + ((q'−1)/2) ln 2π + Σ_{c_i>0} 1/(12 c_i)`
///
/// with `q'` the number of nonzero counts. For `t = (n)` it is `1/(12n)`.
pub fn prob_a_stirling_bound(t: &NTypeVector) -> f64 {
    let support: Vec<f64> = t.counts().iter().filter(|&&c| c > 0).map(|&c| c as f64).collect();
    let qp = support.len() as f64;
    let two_pi = 2.0 * core::f64::consts::PI;
    -0.5 * ln(t.n() as f64)
        + support.iter().map(|c| 0.5 * ln(*c)).sum::<f64>()
        + (qp - 1.0) / 2.0 * ln(two_pi)
        + support.iter().map(|c| 1.0 / (12.0 * c)).sum::<f64>()
}

/// The cruder form `−½ ln n + Σ ½ ln c_i + ((q−1)/2) ln 2π + 1/(12n)` with
/// `q` the alphabet size. It keeps only the `1/(12n)` correction and fails
/// for small types, e.g. `t = (1, 1)`.
pub fn prob_a_stirling_bound_single_correction(t: &NTypeVector) -> f64 {
    let n = t.n() as f64;
    let two_pi = 2.0 * core::f64::consts::PI;
    -0.5 * ln(n)
        + t.counts().iter().filter(|&&c| c > 0).map(|&c| 0.5 * ln(c as f64)).sum::<f64>()
        + (t.q() as f64 - 1.0) / 2.0 * ln(two_pi)
        + 1.0 / (12.0 * n)
}
