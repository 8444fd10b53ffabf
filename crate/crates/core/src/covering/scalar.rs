use alloc::vec::Vec;

use crate::{Error, Result};

/// The one-dimensional grid `Λ(ε)`: points `εi²` and `1 − εi²` below and
/// above `1/2`, plus `1/2` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarNet {
    pub eps: f64,
    pub points: Vec<f64>,
}

impl ScalarNet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn scalar_net(eps: f64) -> Result<ScalarNet> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("eps must be positive, got {eps}")));
    }
    let mut low = Vec::new();
    let mut i = 1u64;
    loop {
        let v = eps * (i * i) as f64;
        if v >= 0.5 {
            break;
        }
        low.push(v);
        i += 1;
    }
    let mut points = low.clone();
    points.push(0.5);
    points.extend(low.iter().rev().map(|v| 1.0 - v));
    Ok(ScalarNet { eps, points })
}
