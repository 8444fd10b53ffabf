//! Worked examples checked against independent brute-force computations.

use num_bigint::BigInt;
use num_traits::Zero;
use permchan_core::bounds::mi_upper_bound;
use permchan_core::covering::net_for_n;
use permchan_core::math::regression_slope;
use permchan_core::rational::BigRational;
use permchan_core::simulate::{exact_ml_decode, min_divergence_decode, Codebook, CodebookKind};
use permchan_core::{enumerate_ntypes, ChannelModel, NTypeVector};

fn exact(rows: &[&[(i64, i64)]]) -> ChannelModel {
    ChannelModel::from_rationals(
        rows.iter()
            .map(|r| r.iter().map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
            .collect(),
    )
    .unwrap()
}

fn book(n: u32, words: &[&[u32]]) -> Codebook {
    Codebook {
        n,
        codewords: words.iter().map(|w| NTypeVector::new(w.to_vec()).unwrap()).collect(),
        kind: CodebookKind::Grid,
        spacing: 0,
        separated: false,
        stems: 1,
    }
}

/// All sequences of length `n` over `0..k`.
fn sequences(n: u32, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|s| (0..k).map(move |j| [s.clone(), vec![j]].concat())).collect();
    }
    out
}

fn type_of(seq: &[usize], k: usize) -> Vec<u32> {
    let mut t = vec![0u32; k];
    for &s in seq {
        t[s] += 1;
    }
    t
}

/// `P[type(Y) = m | X uniform on T(w)]` for every `m`, by summing over all
/// input and output sequences.
fn brute_likelihoods(w: &[u32], ch: &ChannelModel) -> Vec<(Vec<u32>, BigRational)> {
    let (q, k) = (ch.q(), ch.k());
    let n: u32 = w.iter().sum();
    let p = ch.exact().unwrap();
    let inputs: Vec<Vec<usize>> = sequences(n, q).into_iter().filter(|x| type_of(x, q) == w).collect();
    let size = BigRational::from_integer(BigInt::from(inputs.len()));
    let mut acc: Vec<(Vec<u32>, BigRational)> = Vec::new();
    for y in sequences(n, k) {
        let mut total = BigRational::zero();
        for x in &inputs {
            let mut prod = BigRational::from_integer(BigInt::from(1));
            for (&xi, &yi) in x.iter().zip(&y) {
                prod *= &p[xi][yi];
            }
            total += prod;
        }
        let m = type_of(&y, k);
        match acc.iter_mut().find(|(t, _)| *t == m) {
            Some((_, v)) => *v += total,
            None => acc.push((m, total)),
        }
    }
    acc.into_iter().map(|(m, v)| (m, v / &size)).collect()
}

/// Brute-force Bayes decisions under a uniform prior: the lowest index among
/// the codewords of largest likelihood, for every output type some codeword
/// can produce.
fn bayes_decisions(book: &Codebook, ch: &ChannelModel) -> Vec<(Vec<u32>, usize)> {
    let laws: Vec<_> = book.codewords.iter().map(|w| brute_likelihoods(w.counts(), ch)).collect();
    let mut out = Vec::new();
    for (m, _) in &laws[0] {
        let lik: Vec<BigRational> =
            laws.iter().map(|law| law.iter().find(|(t, _)| t == m).unwrap().1.clone()).collect();
        if lik.iter().all(|l| l.is_zero()) {
            continue;
        }
        let mut best = 0;
        for (i, l) in lik.iter().enumerate() {
            if *l > lik[best] {
                best = i;
            }
        }
        out.push((m.clone(), best));
    }
    out
}

#[test]
fn exact_ml_matches_bayes_rule_on_bsc_at_four() {
    let bsc = exact(&[&[(9, 10), (1, 10)], &[(1, 10), (9, 10)]]);
    let b = book(4, &[&[3, 1], &[1, 3]]);
    let decisions = bayes_decisions(&b, &bsc);
    assert_eq!(decisions.len(), 5);
    for (m, want) in decisions {
        assert_eq!(exact_ml_decode(&m, &b, &bsc).unwrap(), want, "m = {m:?}");
    }
}

#[test]
fn exact_ml_matches_bayes_rule_up_to_six() {
    let channels = [
        exact(&[&[(7, 10), (3, 10)], &[(1, 5), (4, 5)]]),
        exact(&[&[(1, 2), (1, 3), (1, 6)], &[(1, 10), (1, 5), (7, 10)]]),
        exact(&[&[(1, 2), (1, 2)], &[(0, 1), (1, 1)], &[(1, 4), (3, 4)]]),
    ];
    for ch in &channels {
        for n in 2..=6u32 {
            let types = enumerate_ntypes(n, ch.q()).unwrap();
            let picks = [(0, types.len() - 1), (1, types.len() / 2), (types.len() - 2, types.len() / 3)];
            for (a, b) in picks {
                if a == b {
                    continue;
                }
                let words = [types[a].counts(), types[b].counts()];
                let cb = book(n, &words);
                for (m, want) in bayes_decisions(&cb, ch) {
                    let got = exact_ml_decode(&m, &cb, ch).unwrap();
                    assert_eq!(got, want, "n={n} words={words:?} m={m:?}");
                }
            }
        }
    }
}

#[test]
fn output_at_a_codeword_mean_decodes_to_it() {
    let bsc = exact(&[&[(9, 10), (1, 10)], &[(1, 10), (9, 10)]]);
    let b = book(10, &[&[10, 0], &[5, 5], &[0, 10]]);
    for (y, want) in [([9, 1], 0), ([5, 5], 1), ([1, 9], 2)] {
        assert_eq!(min_divergence_decode(&y, &b, &bsc), want);
    }
    let three = exact(&[&[(1, 2), (1, 4), (1, 4)], &[(1, 4), (1, 2), (1, 4)], &[(1, 4), (1, 4), (1, 2)]]);
    let b = book(12, &[&[12, 0, 0], &[0, 12, 0], &[4, 4, 4]]);
    for (y, want) in [([6, 3, 3], 0), ([3, 6, 3], 1), ([4, 4, 4], 2)] {
        assert_eq!(min_divergence_decode(&y, &b, &three), want);
    }
}

#[test]
fn equal_codewords_always_decode_to_the_first() {
    let ch = ChannelModel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
    let b = book(4, &[&[2, 2], &[2, 2], &[2, 2]]);
    for y in enumerate_ntypes(4, 2).unwrap() {
        assert_eq!(exact_ml_decode(y.counts(), &b, &ch).unwrap(), 0);
        assert_eq!(min_divergence_decode(y.counts(), &b, &ch), 0);
    }
}

#[test]
fn net_size_grows_like_half_log_n_for_rank_two() {
    let ch = ChannelModel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
    let ns = [10u32, 100, 1000, 10_000];
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ns.iter().map(|&n| (net_for_n(&ch, n).unwrap().len() as f64).ln()).collect();
    let slope = regression_slope(&xs, &ys);
    assert!((slope - 0.5).abs() < 0.1, "slope {slope}");
}

#[test]
fn mutual_information_bound_tends_to_half_log_n() {
    let positive = ChannelModel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
    let erasure = ChannelModel::new(vec![vec![0.7, 0.0, 0.3], vec![0.0, 0.6, 0.4]]).unwrap();
    for ch in [&positive, &erasure] {
        let ratio = |n: u32| {
            let b = mi_upper_bound(ch, n, net_for_n(ch, n).unwrap().len(), 0.0).unwrap();
            assert_eq!(b.slope, 0.5);
            (b.value, b.value / (n as f64).ln())
        };
        let (v2, r2) = ratio(100);
        let (_, r3) = ratio(1000);
        let (v4, r4) = ratio(10_000);
        assert!(r2 > r3 && r3 > r4 && r4 > 0.5, "{r2} {r3} {r4}");
        let slope = (v4 - v2) / (100f64).ln();
        assert!((slope - 0.5).abs() < 0.1, "slope {slope}");
    }
}
