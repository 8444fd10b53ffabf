use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::law::ytype_law_given_a;
use crate::channel::ChannelModel;
use crate::math::{exp, ln, LogFactorials, LogSumExp};
use crate::ntype::{enumerate_ntypes, Compositions, NTypeVector};
use crate::{Error, Result};

/// Law of the type of the first `m` outputs, as `(m', ln ℙ[m'])`.
///
/// Given the full output type `M`, the first `m` coordinates of an
/// exchangeable sequence form a uniformly random `m`-subset, so their type
/// is multivariate hypergeometric: `Π_j C(M_j, m'_j) / C(n, m)`.
pub fn marginal_law(pi: &NTypeVector, ch: &ChannelModel, m: u32) -> Result<Vec<(Vec<u32>, f64)>> {
    let n = pi.n();
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(alloc::format!("need 1 ≤ m ≤ n = {n}, got m = {m}")));
    }
    let (law, _) = ytype_law_given_a(pi, ch)?;
    let lf = LogFactorials::new(n as usize);
    let ln_choose = |a: u32, b: u32| lf.get(a as usize) - lf.get(b as usize) - lf.get((a - b) as usize);
    let norm = ln_choose(n, m);
    let mut acc: BTreeMap<Vec<u32>, LogSumExp> = BTreeMap::new();
    for (full, l) in &law.entries {
        for sub in Compositions::new(m, ch.k()) {
            if sub.iter().zip(full).any(|(s, f)| s > f) {
                continue;
            }
            let h: f64 = sub.iter().zip(full).map(|(&s, &f)| ln_choose(f, s)).sum::<f64>() - norm;
            acc.entry(sub).or_default().push(l + h);
        }
    }
    Ok(acc.into_iter().map(|(s, v)| (s, v.value().min(0.0))).collect())
}

/// `D(P_{Y^m} ‖ Q^m)` for the first `m` coordinates.
pub fn marginal_divergence(pi: &NTypeVector, ch: &ChannelModel, q: &[f64], m: u32) -> Result<f64> {
    if q.len() != ch.k() {
        return Err(Error::Dimension { expected: ch.k(), got: q.len() });
    }
    let law = marginal_law(pi, ch, m)?;
    let lf = LogFactorials::new(m as usize);
    let mut d = 0.0;
    for (sub, l) in &law {
        let mut log_qm = 0.0;
        for (&c, &qj) in sub.iter().zip(q) {
            if c == 0 {
                continue;
            }
            if qj <= 0.0 {
                return Ok(f64::INFINITY);
            }
            log_qm += c as f64 * ln(qj);
        }
        d += exp(*l) * (l - lf.ln_multinomial(sub) - log_qm);
    }
    Ok(d.max(0.0))
}

/// `I(π; Y^n)` with `π` uniform over all `n`-types, in nats.
///
/// The output type is sufficient for `π`, so the sum runs over types only.
pub fn mutual_information_uniform_types(ch: &ChannelModel, n: u32) -> Result<f64> {
    let types = enumerate_ntypes(n, ch.q())?;
    let w = ln(types.len() as f64);
    let mut laws = Vec::with_capacity(types.len());
    let mut mix: BTreeMap<Vec<u32>, LogSumExp> = BTreeMap::new();
    for pi in &types {
        let (law, _) = ytype_law_given_a(pi, ch)?;
        for (m, l) in &law.entries {
            mix.entry(m.clone()).or_default().push(l - w);
        }
        laws.push(law);
    }
    let mix: BTreeMap<Vec<u32>, f64> = mix.into_iter().map(|(m, v)| (m, v.value())).collect();
    let mut info = 0.0;
    for law in &laws {
        for (m, l) in &law.entries {
            info += exp(l - w) * (l - mix[m]);
        }
    }
    Ok(info.max(0.0))
}
