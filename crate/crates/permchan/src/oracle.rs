//! Sequence-level reference computations.
//!
//! These enumerate raw input and output sequences instead of types, which
//! makes them independent of the type-level machinery in the core crate
//! and usable only at toy sizes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use permchan_core::rational::BigRational;
use permchan_core::{ChannelModel, Error, NTypeVector};

/// Enumeration budget: `k^n · |T(π)| · n` multiplications.
pub const WORK_LIMIT: u128 = 200_000_000;

/// Law of the output type given a uniform input sequence of type `π`,
/// keyed by output type.
pub type SequenceLaw = BTreeMap<Vec<u32>, BigRational>;

/// Every arrangement of the multiset described by `counts`, in
/// lexicographic order.
pub fn arrangements(counts: &[u32]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> =
        counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize)).collect();
    let mut out = vec![cur.clone()];
    // classic next-permutation
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("a larger element exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

fn integer_matrix(ch: &ChannelModel) -> Result<(Vec<Vec<u128>>, BigInt), Error> {
    let exact = ch.exact().ok_or_else(|| Error::Precondition("oracle needs an exact channel".into()))?;
    let lcm = exact.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = exact
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    (x.numer() * (&lcm / x.denom())).to_u128().ok_or(Error::Precondition("entry too large".into()))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok((ints, lcm))
}

fn overflow() -> Error {
    Error::Precondition("sequence sums overflow 128 bits; use a coarser channel".into())
}

/// `ℙ[type(Y^n) = m | X^n uniform on T(π)]` by summing over all `k^n`
/// output sequences and all input sequences of type `π`.
///
/// Entries are brought to a common denominator `L`, so every sequence
/// probability is an integer over `L^n` and sums stay exact in 128 bits.
pub fn ytype_law(pi: &NTypeVector, ch: &ChannelModel) -> Result<SequenceLaw, Error> {
    let n = pi.n() as usize;
    let k = ch.k();
    let xs = arrangements(pi.counts());
    let outputs = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let work = outputs.saturating_mul(xs.len() as u128).saturating_mul(n as u128);
    if work > WORK_LIMIT {
        return Err(Error::TooLarge { count: work, limit: WORK_LIMIT });
    }
    let (ints, lcm) = integer_matrix(ch)?;
    let mut sums: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
    let mut y = vec![0usize; n];
    loop {
        let mut total = 0u128;
        for x in &xs {
            let mut prod = 1u128;
            for (&xi, &yi) in x.iter().zip(&y) {
                prod = prod.checked_mul(ints[xi][yi]).ok_or_else(overflow)?;
            }
            total = total.checked_add(prod).ok_or_else(overflow)?;
        }
        let mut t = vec![0u32; k];
        for &yi in &y {
            t[yi] += 1;
        }
        let slot = sums.entry(t).or_insert(0);
        *slot = slot.checked_add(total).ok_or_else(overflow)?;
        // next output sequence in base k
        let Some(pos) = y.iter().rposition(|&d| d + 1 < k) else { break };
        y[pos] += 1;
        for d in &mut y[pos + 1..] {
            *d = 0;
        }
    }
    let denom = BigInt::from(xs.len()) * num_traits::pow(lcm, n);
    Ok(sums
        .into_iter()
        .filter(|(_, s)| *s > 0)
        .map(|(t, s)| (t, BigRational::new(BigInt::from(s), denom.clone())))
        .collect())
}

/// `ℙ[A = 1 | y^n]` for one output sequence of type `m`: the chance that
/// `n` i.i.d. draws from `π` land exactly on type `π`, given that the
/// channel produced `y^n`, from sequence-level Bayes.
pub fn posterior_given_sequence(pi: &NTypeVector, ch: &ChannelModel, y: &[usize]) -> Result<BigRational, Error> {
    let exact = ch.exact().ok_or_else(|| Error::Precondition("oracle needs an exact channel".into()))?;
    let n = pi.n() as usize;
    let freq: Vec<BigRational> =
        pi.counts().iter().map(|&c| BigRational::new(BigInt::from(c), BigInt::from(n))).collect();
    let xs = arrangements(pi.counts());
    // joint ℙ[X^n = x, Y^n = y] summed over x of type π, under i.i.d. inputs
    let mut joint_a = BigRational::zero();
    for x in &xs {
        let mut p = BigRational::one();
        for (&xi, &yi) in x.iter().zip(y) {
            p *= &freq[xi] * &exact[xi][yi];
        }
        joint_a += p;
    }
    // ℙ[Y^n = y] under i.i.d. inputs is a product of output marginals
    let mut py = BigRational::one();
    for &yi in y {
        let pyi: BigRational = freq.iter().zip(exact).map(|(f, row)| f * &row[yi]).sum();
        py *= pyi;
    }
    if py.is_zero() {
        return Err(Error::UnreachableType);
    }
    Ok(joint_a / py)
}

/// `D(P_{Y^n} ‖ Q^n)` by summing over every output sequence, with the
/// sequence probabilities taken from [`ytype_law`] spread uniformly over
/// each type class.
pub fn divergence(pi: &NTypeVector, ch: &ChannelModel, q: &[f64]) -> Result<f64, Error> {
    let law = ytype_law(pi, ch)?;
    let mut d = 0.0;
    for (t, p) in &law {
        let class: BigInt = class_size(t);
        let per_seq = (p / BigRational::from_integer(class.clone())).to_f64().unwrap_or(0.0);
        if per_seq == 0.0 {
            continue;
        }
        let log_q: f64 = t.iter().zip(q).map(|(&c, &qj)| if c == 0 { 0.0 } else { c as f64 * qj.ln() }).sum();
        let term = per_seq * (per_seq.ln() - log_q);
        d += class.to_f64().unwrap_or(f64::INFINITY) * term;
    }
    Ok(d)
}

fn class_size(t: &[u32]) -> BigInt {
    let n: u32 = t.iter().sum();
    let fact = |m: u32| (1..=m).fold(BigInt::one(), |acc, i| acc * i);
    t.iter().fold(fact(n), |acc, &c| acc / fact(c))
}
