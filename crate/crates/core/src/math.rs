//! Log-domain arithmetic and a few scalar helpers.
//!
//! `core` has no transcendental functions, so everything routes through
//! `libm`. Keep the wrappers here so the rest of the crate reads like
//! ordinary float code.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `x ln(x / y)` with `0 ln(0 / y) = 0` and `+∞` when `x > 0 = y`.
#[inline]
pub fn xlogx_over_y(x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if y <= 0.0 {
        f64::INFINITY
    } else {
        x * ln(x / y)
    }
}

/// `ln n!`. Exact summation below 256, Stirling series above.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 256 {
        (2..=n).map(|i| ln(i as f64)).sum()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// Table of `ln i!` for `i ≤ max`.
///
/// Built eagerly by whoever needs it; there is no global cache, so the
/// table can be shared across threads once constructed.
#[derive(Debug, Clone)]
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut acc = 0.0;
        table.push(0.0);
        for i in 1..=max {
            acc += ln(i as f64);
            table.push(acc);
        }
        Self { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        match self.table.get(n) {
            Some(v) => *v,
            None => ln_factorial(n as u64),
        }
    }

    /// `ln (n! / Π c_i!)` where `n = Σ c_i`.
    pub fn ln_multinomial(&self, counts: &[u32]) -> f64 {
        let n: usize = counts.iter().map(|&c| c as usize).sum();
        counts.iter().fold(self.get(n), |acc, &c| acc - self.get(c as usize))
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); after removing the common
        // factor with acc, the rest of (i + 1) divides (n - i).
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = num_integer::gcd(acc, den);
        match (acc / g).checked_mul(num / (den / g)) {
            Some(v) => acc = v,
            None => return u128::MAX,
        }
    }
    acc
}

/// A probability carried in the natural-log domain.
///
/// `LogProb::ZERO` is the distinguished `-∞` element; it never arises from
/// an underflow because every constructor maps exact zeros to it explicitly.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    pub const ONE: LogProb = LogProb(0.0);

    /// Wraps a log value. Values above zero are rejected in debug builds.
    pub fn new(value: f64) -> Self {
        debug_assert!(!value.is_nan() && value <= 1e-9, "log-probability {value}");
        LogProb(value)
    }

    pub fn from_prob(p: f64) -> Self {
        if p <= 0.0 {
            Self::ZERO
        } else {
            LogProb(ln(p))
        }
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn prob(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            exp(self.0)
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

impl Mul for LogProb {
    type Output = LogProb;
    fn mul(self, rhs: LogProb) -> LogProb {
        if self.is_zero() || rhs.is_zero() {
            LogProb::ZERO
        } else {
            LogProb(self.0 + rhs.0)
        }
    }
}

impl Add for LogProb {
    type Output = LogProb;
    fn add(self, rhs: LogProb) -> LogProb {
        let mut acc = LogSumExp::new();
        acc.push(self.0);
        acc.push(rhs.0);
        LogProb(acc.value())
    }
}

impl fmt::Display for LogProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Streaming log-sum-exp with a running maximum.
///
/// The accumulated sum is kept relative to the largest term seen so far and
/// rescaled whenever a new maximum arrives.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    scaled: f64,
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSumExp {
    pub fn new() -> Self {
        Self { max: f64::NEG_INFINITY, scaled: 0.0 }
    }

    pub fn push(&mut self, log_term: f64) {
        if log_term == f64::NEG_INFINITY {
            return;
        }
        if log_term <= self.max {
            self.scaled += exp(log_term - self.max);
        } else {
            self.scaled = self.scaled * exp(self.max - log_term) + 1.0;
            self.max = log_term;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + ln(self.scaled)
        }
    }
}

pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = LogSumExp::new();
    for t in terms {
        acc.push(t);
    }
    acc.value()
}

/// Ordinary least squares slope of `ys` against `xs`.
pub fn regression_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}
