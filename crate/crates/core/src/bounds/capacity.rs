use crate::channel::{ChannelClass, ChannelModel};

/// Capacity of a noisy permutation channel, in units of `log M / log n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Capacity {
    /// A solved class.
    Exact { value: f64, formula: &'static str },
    /// Only bounds are known. `conditional_upper` holds only under an
    /// unproven assumption about the worst input type.
    BoundsOnly { lower: f64, upper: f64, conditional_upper: Option<f64>, formula: &'static str },
}

impl Capacity {
    pub fn value(&self) -> Option<f64> {
        match self {
            Capacity::Exact { value, .. } => Some(*value),
            Capacity::BoundsOnly { .. } => None,
        }
    }

    pub fn lower(&self) -> f64 {
        match self {
            Capacity::Exact { value, .. } => *value,
            Capacity::BoundsOnly { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> f64 {
        match self {
            Capacity::Exact { value, .. } => *value,
            Capacity::BoundsOnly { upper, .. } => *upper,
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            Capacity::Exact { formula, .. } | Capacity::BoundsOnly { formula, .. } => formula,
        }
    }
}

/// Closed-form capacity by class.
///
/// Unsolved classes get the achievable `(rank − 1)/2` and the counting
/// bound `min(ext, k) − 1`: the output type takes at most `(n+1)^{k−1}`
/// values, and inputs that are mixtures of extreme rows can be simulated
/// by randomizing over the extreme inputs, whose types number at most
/// `(n+1)^{ext−1}`.
pub fn capacity_value(ch: &ChannelModel) -> Capacity {
    let rank = ch.rank() as f64;
    let achievable = (rank - 1.0) / 2.0;
    let counting = || (ch.extreme_point_count().min(ch.k()) as f64) - 1.0;
    match ch.class() {
        ChannelClass::StrictlyPositive => Capacity::Exact { value: achievable, formula: "(rank - 1)/2" },
        ChannelClass::BlockDiagonal(b) if b.all_strictly_positive() => {
            Capacity::Exact { value: (rank + b.beta() as f64 - 2.0) / 2.0, formula: "(rank + beta - 2)/2" }
        }
        ChannelClass::Erasure { .. } => Capacity::Exact { value: (ch.q() as f64 - 1.0) / 2.0, formula: "(q - 1)/2" },
        ChannelClass::ZChannel => Capacity::Exact { value: 0.5, formula: "1/2" },
        ChannelClass::Zigzag => Capacity::BoundsOnly {
            lower: achievable,
            upper: counting(),
            conditional_upper: Some(super::zigzag_conditional_bound(ch.q()).value),
            formula: "(rank - 1)/2 <= C <= min(ext, k) - 1; 3(q - 1)/4 if the alternating input type is worst",
        },
        ChannelClass::BlockDiagonal(_) | ChannelClass::General => Capacity::BoundsOnly {
            lower: achievable,
            upper: counting(),
            conditional_upper: None,
            formula: "(rank - 1)/2 <= C <= min(ext, k) - 1",
        },
    }
}
