//! Capacity formulas and the analytic bounds around them.

mod capacity;
mod concentration;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use capacity::{capacity_value, Capacity};
pub use concentration::{
    balls_in_bins_bound, bernstein_gamma, bernstein_tail, calibrate_alpha, petrov_bound, prob_a_stirling_bound,
    prob_a_stirling_bound_single_correction, BernsteinTail, PETROV_ALPHA,
};

use crate::channel::ChannelModel;
use crate::math::ln;
use crate::{Error, Result};

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub inputs: String,
    pub value: f64,
    pub formula: String,
}

/// `c_* = min_i (min_j p_ij / max_j p_ij)`; zero when any entry is zero.
pub fn c_star(ch: &ChannelModel) -> f64 {
    ch.rows()
        .iter()
        .map(|r| {
            let lo = r.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = r.iter().cloned().fold(0.0, f64::max);
            lo / hi
        })
        .fold(f64::INFINITY, f64::min)
}

/// The constant bounding the gap for strictly positive channels:
/// `((q−1)/2) ln(2πα²/c_*) + q/12`, or `+ q/(12n)` when `n` is given.
pub fn gap_constant(ch: &ChannelModel, alpha: f64, n: Option<u32>) -> Result<f64> {
    if !ch.is_strictly_positive() {
        return Err(Error::NotStrictlyPositive);
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let q = ch.q() as f64;
    let tail = match n {
        Some(n) => q / (12.0 * n as f64),
        None => q / 12.0,
    };
    let two_pi = 2.0 * core::f64::consts::PI;
    Ok((q - 1.0) / 2.0 * ln(two_pi * alpha * alpha / c_star(ch)) + tail)
}

/// Which of the three `m`-observation bounds is smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StamWinner {
    Han,
    Stam,
    LargeM,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StamBounds {
    /// `(m/n) c` with the caller's constant.
    pub han: f64,
    /// `((q−1)/2) m(m−1) / ((n−1)(n−m+1))`.
    pub stam: f64,
    /// `(q−1)/(n−1) (n Σ_{j=n−m+1}^{n−1} 1/j − (m−1))`; `None` at `m = n`.
    pub large_m: Option<f64>,
    pub tightest: StamWinner,
}

/// Bounds on `D(P_{Y^m} ‖ P_Y^m)` for the first `m` of `n` outputs.
pub fn stam_bounds(q: usize, n: u32, m: u32, c: f64) -> Result<StamBounds> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    let (qf, nf, mf) = (q as f64, n as f64, m as f64);
    let han = mf / nf * c;
    let stam = if m <= 1 { 0.0 } else { (qf - 1.0) / 2.0 * mf * (mf - 1.0) / ((nf - 1.0) * (nf - mf + 1.0)) };
    let large_m = if m < n {
        let harmonic: f64 = (n - m + 1..n).map(|j| 1.0 / j as f64).sum();
        Some(if n == 1 { 0.0 } else { (qf - 1.0) / (nf - 1.0) * (nf * harmonic - (mf - 1.0)) })
    } else {
        None
    };
    let mut tightest = (StamWinner::Han, han);
    if stam < tightest.1 {
        tightest = (StamWinner::Stam, stam);
    }
    if let Some(v) = large_m {
        if v < tightest.1 {
            tightest = (StamWinner::LargeM, v);
        }
    }
    Ok(StamBounds { han, stam, large_m, tightest: tightest.0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossover {
    /// `½ ln(2πα²/c_*)`.
    pub lhs: f64,
    /// `min{γ/(1−γ), (1/γ) ln(1/(1−γ))}`.
    pub rhs: f64,
    pub holds: bool,
}

/// Large-`n` condition, with `γ = m/n`, under which `(m/n)c` beats both
/// Stam-type bounds.
pub fn stam_crossover(alpha: f64, c_star: f64, gamma: f64) -> Crossover {
    let lhs = 0.5 * ln(2.0 * core::f64::consts::PI * alpha * alpha / c_star);
    let rhs = if gamma >= 1.0 { f64::INFINITY } else { (gamma / (1.0 - gamma)).min(ln(1.0 / (1.0 - gamma)) / gamma) };
    Crossover { lhs, rhs, holds: lhs <= rhs }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZigzagBound {
    /// `3(q−1)/4`.
    pub value: f64,
    /// The alternating-type argument needs odd `q`.
    pub even_q_caveat: bool,
    /// Distance to the achievable `(q−1)/2`.
    pub gap_to_achievable: f64,
}

/// Capacity bound for the zigzag channel, valid only if the alternating
/// input type is the worst case.
pub fn zigzag_conditional_bound(q: usize) -> ZigzagBound {
    let d = q.saturating_sub(1) as f64;
    ZigzagBound { value: 3.0 * d / 4.0, even_q_caveat: q.is_multiple_of(2), gap_to_achievable: d / 4.0 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiUpperBound {
    /// `ln |net| + c + 1`.
    pub value: f64,
    /// `ℓ = rank − 1`.
    pub ell: usize,
    /// `ℓ/2`, the coefficient of `ln n` in the asymptotic form.
    pub slope: f64,
    /// `value − (ℓ/2) ln n`, the measured `c'`.
    pub offset: f64,
}

/// `I(π; Y^n) ≤ ln |N_n| + n·(1/n) + c` for a radius-`1/n` net `N_n` of the
/// channel image and a gap constant `c`.
pub fn mi_upper_bound(ch: &ChannelModel, n: u32, net_size: usize, c: f64) -> Result<MiUpperBound> {
    if net_size == 0 || n == 0 {
        return Err(Error::InvalidParameter("need n ≥ 1 and a nonempty net".into()));
    }
    let ell = ch.rank() - 1;
    let value = ln(net_size as f64) + c + 1.0;
    let slope = ell as f64 / 2.0;
    Ok(MiUpperBound { value, ell, slope, offset: value - slope * ln(n as f64) })
}

/// Everything `permchan bounds` prints for one channel.
pub fn bound_table(ch: &ChannelModel, n: u32, alpha: f64, net_size: Option<usize>) -> Vec<BoundReport> {
    let mut out = Vec::new();
    let inputs = format!("q={} k={} rank={} class={}", ch.q(), ch.k(), ch.rank(), ch.class().name());
    let mut push = |name: &str, inputs: &str, value: f64, formula: &str| {
        out.push(BoundReport { name: name.into(), inputs: inputs.into(), value, formula: formula.into() })
    };
    let cap = capacity_value(ch);
    match &cap {
        Capacity::Exact { value, formula } => push("capacity", &inputs, *value, formula),
        Capacity::BoundsOnly { lower, upper, conditional_upper, formula } => {
            push("capacity_lower", &inputs, *lower, formula);
            push("capacity_upper", &inputs, *upper, formula);
            if let Some(u) = conditional_upper {
                push("capacity_upper_conditional", &inputs, *u, "3(q - 1)/4");
            }
        }
    }
    push("extreme_points", &inputs, ch.extreme_point_count() as f64, "ext(P)");
    let cs = c_star(ch);
    push("c_star", &inputs, cs, "min_i min_j p_ij / max_j p_ij");
    let alpha_in = format!("alpha={alpha}");
    match gap_constant(ch, alpha, None) {
        Ok(c) => {
            push("gap_constant", &alpha_in, c, "((q-1)/2) ln(2 pi alpha^2 / c_star) + q/12");
            let c_n = gap_constant(ch, alpha, Some(n)).unwrap_or(f64::NAN);
            push("gap_constant_n", &format!("{alpha_in} n={n}"), c_n, "((q-1)/2) ln(2 pi alpha^2 / c_star) + q/(12n)");
            if let Some(size) = net_size {
                if let Ok(mi) = mi_upper_bound(ch, n, size, c) {
                    let ins = format!("n={n} net={size} c={c}");
                    push("mi_upper_bound", &ins, mi.value, "ln|net| + c + 1");
                    push("mi_asymptotic_slope", &ins, mi.slope, "(rank - 1)/2 coefficient of ln n");
                    push("mi_offset", &ins, mi.offset, "bound - slope ln n");
                }
            }
        }
        Err(_) => push("gap_constant", &alpha_in, f64::INFINITY, "undefined for channels with zero entries"),
    }
    if matches!(ch.class(), crate::ChannelClass::Zigzag) {
        let z = zigzag_conditional_bound(ch.q());
        push("zigzag_conditional", &format!("q={}", ch.q()), z.value, "3(q-1)/4");
    }
    push("bernstein_gamma", &format!("q={}", ch.q()), bernstein_gamma(ch.q()), "40q");
    out
}
