//! The same laws in exact rational arithmetic.
//!
//! These exist to be compared against an independent oracle, so they mirror
//! the floating routines step by step rather than sharing code with them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::channel::ChannelModel;
use crate::ntype::{Compositions, NTypeVector};
use crate::rational::{from_biguint, multinomial_coefficient, multinomial_prob, rational_pow, BigRational};
use crate::{Error, Result};

pub type RationalLaw = BTreeMap<Vec<u32>, BigRational>;

fn exact_rows(ch: &ChannelModel) -> Result<&[Vec<BigRational>]> {
    ch.exact().ok_or_else(|| Error::InvalidParameter("channel was not built from rationals".into()))
}

/// `ℙ[type(Y^n) = m | A = 1]` by row-wise convolution.
pub fn ytype_law_given_a_rational(pi: &NTypeVector, ch: &ChannelModel) -> Result<RationalLaw> {
    let rows = exact_rows(ch)?;
    if pi.q() != rows.len() {
        return Err(Error::Dimension { expected: rows.len(), got: pi.q() });
    }
    let k = ch.k();
    let mut states: RationalLaw = BTreeMap::new();
    states.insert(alloc::vec![0; k], BigRational::from_integer(1.into()));
    for (row, &c) in rows.iter().zip(pi.counts()) {
        let comps: Vec<(Vec<u32>, BigRational)> = Compositions::new(c, k)
            .map(|part| {
                let w = multinomial_prob(&part, row);
                (part, w)
            })
            .filter(|(_, w)| !w.is_zero())
            .collect();
        let mut next: RationalLaw = BTreeMap::new();
        for (m, lw) in &states {
            for (part, w) in &comps {
                let key: Vec<u32> = m.iter().zip(part).map(|(a, b)| a + b).collect();
                *next.entry(key).or_insert_with(BigRational::zero) += lw * w;
            }
        }
        states = next;
    }
    Ok(states)
}

/// `ℙ[A = 1]` for inputs i.i.d. from the type's own frequencies.
pub fn prob_a_rational(pi: &NTypeVector) -> BigRational {
    let n = BigRational::from_integer(pi.n().into());
    let freqs: Vec<BigRational> = pi.counts().iter().map(|&c| BigRational::from_integer(c.into()) / &n).collect();
    multinomial_prob(pi.counts(), &freqs)
}

/// `P_Y = μ(π)` exactly.
pub fn output_marginal_rational(pi: &NTypeVector, ch: &ChannelModel) -> Result<Vec<BigRational>> {
    let rows = exact_rows(ch)?;
    let n = BigRational::from_integer(pi.n().into());
    let mut out = alloc::vec![BigRational::zero(); ch.k()];
    for (row, &c) in rows.iter().zip(pi.counts()) {
        let w = BigRational::from_integer(c.into()) / &n;
        for (o, p) in out.iter_mut().zip(row) {
            *o += &w * p;
        }
    }
    Ok(out)
}

/// `ℙ[A = 1 | type(Y^n) = m]`.
pub fn prob_a_given_ytype_rational(pi: &NTypeVector, ch: &ChannelModel, m: &[u32]) -> Result<BigRational> {
    let law = ytype_law_given_a_rational(pi, ch)?;
    let joint = law.get(m).ok_or(Error::UnreachableType)?;
    let p_y = output_marginal_rational(pi, ch)?;
    let iid = multinomial_prob(m, &p_y);
    Ok(joint * prob_a_rational(pi) / iid)
}

/// Law of the type of the first `m` outputs (hypergeometric thinning).
pub fn marginal_law_rational(pi: &NTypeVector, ch: &ChannelModel, m: u32) -> Result<RationalLaw> {
    let n = pi.n();
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(alloc::format!("need 1 ≤ m ≤ n = {n}, got m = {m}")));
    }
    let law = ytype_law_given_a_rational(pi, ch)?;
    let choose = |a: u32, b: u32| from_biguint(multinomial_coefficient(&[b, a - b]));
    let norm = choose(n, m);
    let mut out: RationalLaw = BTreeMap::new();
    for (full, p) in &law {
        for sub in Compositions::new(m, ch.k()) {
            if sub.iter().zip(full).any(|(s, f)| s > f) {
                continue;
            }
            let h = sub.iter().zip(full).fold(p.clone(), |acc, (&s, &f)| acc * choose(f, s));
            *out.entry(sub).or_insert_with(BigRational::zero) += h / &norm;
        }
    }
    Ok(out)
}

/// Probability of one specific output sequence of type `m` given `A = 1`.
pub fn sequence_prob_given_a_rational(law: &RationalLaw, m: &[u32]) -> BigRational {
    match law.get(m) {
        Some(p) => p / from_biguint(multinomial_coefficient(m)),
        None => BigRational::zero(),
    }
}

/// `Q^n(y^n)` for any `y^n` of type `m`.
pub fn product_prob_rational(q: &[BigRational], m: &[u32]) -> BigRational {
    q.iter().zip(m).fold(BigRational::from_integer(1.into()), |acc, (qj, &c)| acc * rational_pow(qj, c))
}
