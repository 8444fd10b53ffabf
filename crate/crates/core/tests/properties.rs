//! Randomized invariants over small channels and types.

use proptest::collection::vec;
use proptest::prelude::*;

use permchan_core::bounds::prob_a_stirling_bound;
use permchan_core::exact::{divergence_exact, marginal_divergence, ytype_law_given_a};
use permchan_core::simulate::{build_grid_codebook, simulate_error, wilson_interval, DecoderKind, Z_95};
use permchan_core::{enumerate_ntypes, multinomial_log_prob, output_marginal, ChannelModel, NTypeVector};

/// A `q × k` channel from integer weights; a row of zeros becomes a point
/// mass on its first symbol.
fn channel(q: usize, k: usize, weights: &[u32]) -> ChannelModel {
    let rows = (0..q)
        .map(|i| {
            let w = &weights[i * k..(i + 1) * k];
            let s: u32 = w.iter().sum();
            if s == 0 {
                (0..k).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect()
            } else {
                w.iter().map(|&x| x as f64 / s as f64).collect()
            }
        })
        .collect();
    ChannelModel::new(rows).unwrap()
}

fn instance() -> impl Strategy<Value = (ChannelModel, NTypeVector)> {
    (2usize..=3, 2usize..=3, 1u32..=7).prop_flat_map(|(q, k, n)| {
        (vec(0u32..5, q * k), vec(0u32..=n, q - 1)).prop_map(move |(w, cuts)| {
            let mut cuts = cuts;
            cuts.sort();
            let mut counts = Vec::with_capacity(q);
            let mut prev = 0;
            for c in cuts {
                counts.push(c - prev);
                prev = c;
            }
            counts.push(n - prev);
            (channel(q, k, &w), NTypeVector::new(counts).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conditional_law_is_normalized((ch, pi) in instance()) {
        let (law, _) = ytype_law_given_a(&pi, &ch).unwrap();
        prop_assert!((law.total() - 1.0).abs() <= 1e-10);
        prop_assert!(law.entries.iter().all(|(_, l)| l.is_finite()));
    }

    #[test]
    fn decomposition_holds_and_gap_is_nonnegative((ch, pi) in instance(), qw in vec(1u32..6, 3)) {
        let py = output_marginal(&pi.frequencies(), &ch).unwrap().into_vec();
        let s: u32 = qw[..ch.k()].iter().sum();
        let fixed: Vec<f64> = qw[..ch.k()].iter().map(|&x| x as f64 / s as f64).collect();
        let mut gaps = Vec::new();
        for q in [py, fixed] {
            let r = divergence_exact(&pi, &ch, &q).unwrap();
            prop_assert!(r.residual <= 1e-8, "residual {}", r.residual);
            prop_assert!(r.gap >= -1e-9, "gap {}", r.gap);
            gaps.push(r.gap);
        }
        prop_assert!((gaps[0] - gaps[1]).abs() <= 1e-9);
    }

    #[test]
    fn marginals_grow_to_the_full_divergence((ch, pi) in instance()) {
        let py = output_marginal(&pi.frequencies(), &ch).unwrap().into_vec();
        let full = divergence_exact(&pi, &ch, &py).unwrap().direct;
        let mut prev = 0.0;
        for m in 1..=pi.n() {
            let d = marginal_divergence(&pi, &ch, &py, m).unwrap();
            prop_assert!(d >= prev - 1e-10, "m={m}: {d} < {prev}");
            prev = d;
        }
        prop_assert!((prev - full).abs() <= 1e-9);
    }

    #[test]
    fn stirling_bound_dominates(counts in vec(0u32..8, 1..=4)) {
        prop_assume!(counts.iter().sum::<u32>() > 0);
        let t = NTypeVector::new(counts).unwrap();
        let exact = -multinomial_log_prob(&t, &t.frequencies()).unwrap().ln();
        prop_assert!(prob_a_stirling_bound(&t) >= exact - 1e-12);
    }

    #[test]
    fn wilson_interval_brackets_the_estimate(trials in 1u64..10_000, frac in 0.0f64..=1.0) {
        let errors = ((trials as f64) * frac).round() as u64;
        let (lo, hi) = wilson_interval(errors, trials, Z_95);
        let p = errors as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-15 && p <= hi + 1e-15 && hi <= 1.0);
    }

    #[test]
    fn grid_codewords_are_distinct_types(n in 16u32..400, rate in 0.1f64..0.6) {
        let ch = ChannelModel::new(vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.7, 0.2], vec![0.2, 0.1, 0.7]]).unwrap();
        if let Ok(book) = build_grid_codebook(&ch, n, rate) {
            prop_assert!(book.m() >= 2);
            let mut seen: Vec<&[u32]> = book.codewords.iter().map(|w| w.counts()).collect();
            prop_assert!(book.codewords.iter().all(|w| w.n() == n));
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), book.m());
        }
    }

    #[test]
    fn simulation_is_a_function_of_the_seed(seed in any::<u64>()) {
        let ch = ChannelModel::new(vec![vec![0.8, 0.2], vec![0.3, 0.7]]).unwrap();
        let book = build_grid_codebook(&ch, 64, 0.4).unwrap();
        let a = simulate_error(&book, &ch, 200, seed, DecoderKind::MinDivergence).unwrap();
        let b = simulate_error(&book, &ch, 200, seed, DecoderKind::MinDivergence).unwrap();
        prop_assert_eq!(a.errors, b.errors);
    }
}

#[test]
fn type_masses_sum_to_one() {
    for q in 1..=4usize {
        let p: Vec<f64> = (1..=q).map(|i| i as f64 / (q * (q + 1) / 2) as f64).collect();
        for n in 1..=12u32 {
            let total: f64 =
                enumerate_ntypes(n, q).unwrap().iter().map(|t| multinomial_log_prob(t, &p).unwrap().prob()).sum();
            assert!((total - 1.0).abs() < 1e-10, "n={n} q={q}: {total}");
        }
    }
}
