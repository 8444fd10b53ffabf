use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permchan_core::bounds::capacity_value;
use permchan_core::covering::{covering_radius, in_hull, simplex_net, subspace_net};
use permchan_core::math::binomial;
use permchan_core::rational::{rational_rank, BigRational};
use permchan_core::ChannelModel;

use super::{short, Suite, SuiteOutcome, Tally, VerifyConfig};
use crate::battery::{random_row, DENOMINATOR};
use crate::par;

pub const COVERING_KS: [usize; 3] = [2, 3, 4];
pub const COVERING_EPS: [f64; 3] = [1.0, 0.25, 0.05];
/// Brute-force cross-checks of the certificate run for these dimensions.
pub const BRUTE_MAX_K: usize = 3;

/// Certified radius of the simplex nets on the lattice, cross-checked by
/// brute force for small `k`, and the size bound `|net(2, ε)| ≤ 7/√ε`.
pub fn covering(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    anyhow::ensure!(cfg.grid >= 1, "grid resolution must be positive");
    let mut t = Tally::default();
    let mut cells = Vec::new();
    for k in COVERING_KS {
        for eps in COVERING_EPS {
            let net = simplex_net(k, eps)?;
            let r = covering_radius(&net, cfg.grid)?;
            t.check(r <= eps, || format!("k={k} eps={eps}: radius {r} on grid {}", cfg.grid));
            if k <= BRUTE_MAX_K {
                let b = par::covering_radius_brute(&net.centers, k, cfg.grid);
                t.check((b - r).abs() <= 1e-12, || format!("k={k} eps={eps}: brute {b} vs recursion {r}"));
            }
            cells.push(format!("{k}/{eps}:{r:.4}/{}", net.len()));
        }
    }
    let mut worst_ratio = 0.0f64;
    for i in 1..=2000u32 {
        let eps = i as f64 / 2000.0;
        let size = simplex_net(2, eps)?.len() as f64;
        let limit = 7.0 / eps.sqrt();
        worst_ratio = worst_ratio.max(size / limit);
        t.check(size <= limit, || format!("|net(2, {eps})| = {size} > {limit}"));
    }
    Ok(t.finish(
        Suite::Covering,
        format!("grid={} k/eps:radius/size={} worst_size_ratio={worst_ratio:.4}", cfg.grid, cells.join(",")),
    ))
}

/// A random channel with a chosen rank: `r` random rows (zeros allowed),
/// the rest random mixtures of them, all exact.
pub fn random_ranked_channel<R: Rng>(rng: &mut R) -> ChannelModel {
    let q = rng.random_range(2..=4usize);
    let k = rng.random_range(2..=4usize);
    let r = rng.random_range(1..=q.min(k));
    let den = BigInt::from(DENOMINATOR);
    let mut rows: Vec<Vec<BigRational>> = (0..r)
        .map(|_| random_row(k, 0, rng).into_iter().map(|x| BigRational::new(BigInt::from(x), den.clone())).collect())
        .collect();
    while rows.len() < q {
        let mut w: Vec<i64> = (0..r).map(|_| rng.random_range(0..=10)).collect();
        if w.iter().all(|&x| x == 0) {
            w = vec![1; r];
        }
        let total: i64 = w.iter().sum();
        let mix = (0..k)
            .map(|j| {
                w.iter()
                    .zip(&rows)
                    .map(|(&wi, row)| &row[j] * BigRational::from_integer(BigInt::from(wi)))
                    .sum::<BigRational>()
                    / BigRational::from_integer(BigInt::from(total))
            })
            .collect();
        rows.push(mix);
    }
    rows.shuffle(rng);
    ChannelModel::from_rationals(rows).expect("mixtures of stochastic rows are stochastic")
}

pub const SUBSPACE_CHANNELS: usize = 20;
pub const SUBSPACE_EPS: f64 = 0.25;
pub const SUBSPACE_GRID: u32 = 40;

/// `|net| ≤ C(q, ℓ)·|simplex net|`, hull membership of every center, and a
/// lattice check of the radius over the channel image.
pub fn subspace(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5b5b);
    let mut t = Tally::default();
    let mut worst_radius = 0.0f64;
    let mut ranks = Vec::new();
    for _ in 0..SUBSPACE_CHANNELS {
        let ch = random_ranked_channel(&mut rng);
        let net = subspace_net(&ch, SUBSPACE_EPS)?;
        let ell = ch.rank();
        ranks.push(ell.to_string());
        let per = if ell >= 2 { simplex_net(ell, SUBSPACE_EPS)?.len() } else { 1 };
        let bound = binomial(ch.q() as u64, ell as u64) as usize * per;
        t.check(net.len() <= bound, || format!("[{}]: |net| {} > {bound}", short(&ch), net.len()));
        for c in &net.centers {
            t.check(in_hull(c, ch.rows(), 1e-9), || format!("[{}]: center {c:?} outside hull", short(&ch)));
        }
        let r = par::subspace_covering_radius(&net, &ch, SUBSPACE_GRID);
        worst_radius = worst_radius.max(r);
        t.check(r <= SUBSPACE_EPS, || format!("[{}]: radius {r}", short(&ch)));
    }
    Ok(t.finish(
        Suite::Subspace,
        format!(
            "channels={SUBSPACE_CHANNELS} eps={SUBSPACE_EPS} ranks={} worst_radius={worst_radius:.4}",
            ranks.join("")
        ),
    ))
}

fn exact(rows: Vec<Vec<(i64, i64)>>) -> ChannelModel {
    ChannelModel::from_rationals(
        rows.into_iter()
            .map(|r| r.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
            .collect(),
    )
    .expect("valid test channel")
}

/// An erasure channel: input `i` survives with probability `1 − e_i`.
pub fn erasure_channel(erase: &[(i64, i64)]) -> ChannelModel {
    let q = erase.len();
    exact(
        erase
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let mut row = vec![(0, 1); q + 1];
                row[i] = (b - a, b);
                row[q] = (a, b);
                row
            })
            .collect(),
    )
}

/// A random block-diagonal channel with strictly positive blocks, rows and
/// columns shuffled. Returns the channel and its block count.
pub fn random_block_channel<R: Rng>(rng: &mut R) -> (ChannelModel, usize) {
    let beta = rng.random_range(2..=3usize);
    let shapes: Vec<(usize, usize)> = (0..beta).map(|_| (rng.random_range(1..=2), rng.random_range(1..=3))).collect();
    let q: usize = shapes.iter().map(|s| s.0).sum();
    let k: usize = shapes.iter().map(|s| s.1).sum();
    let zero = BigRational::from_integer(BigInt::from(0));
    let mut rows = vec![vec![zero; k]; q];
    let (mut r0, mut c0) = (0, 0);
    for &(bq, bk) in &shapes {
        for i in 0..bq {
            let min = if bk == 1 { 0 } else { 50 };
            for (j, x) in random_row(bk, min, rng).into_iter().enumerate() {
                rows[r0 + i][c0 + j] = BigRational::new(BigInt::from(x), BigInt::from(DENOMINATOR));
            }
        }
        r0 += bq;
        c0 += bk;
    }
    let mut cols: Vec<usize> = (0..k).collect();
    cols.shuffle(rng);
    rows.shuffle(rng);
    let rows = rows.into_iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
    (ChannelModel::from_rationals(rows).expect("block rows are stochastic"), beta)
}

/// Exact equality of closed-form capacities on the solved classes, with
/// ranks from exact rational elimination.
pub fn capacity(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let mut t = Tally::default();
    let mut check = |ch: &ChannelModel, want: f64, label: &str| {
        let got = capacity_value(ch).value();
        t.check(got == Some(want), || format!("{label} [{}]: got {got:?}, want {want}", short(ch)));
    };

    for (a, b) in [(1, 2), (1, 3), (9, 10)] {
        let z = exact(vec![vec![(b - a, b), (a, b)], vec![(0, 1), (1, 1)]]);
        check(&z, 0.5, "z-channel");
    }
    let probs = [(1, 10), (1, 4), (1, 2), (3, 4), (9, 10), (1, 3)];
    for q in 2..=4usize {
        for shift in 0..3 {
            let erase: Vec<(i64, i64)> = (0..q).map(|i| probs[(i + shift) % probs.len()]).collect();
            check(&erasure_channel(&erase), (q as f64 - 1.0) / 2.0, "erasure");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xb10c);
    for _ in 0..10 {
        let (ch, beta) = random_block_channel(&mut rng);
        let rank = rational_rank(ch.exact().expect("exact channel"));
        check(&ch, (rank as f64 + beta as f64 - 2.0) / 2.0, "block-diagonal");
    }
    for q in 2..=5usize {
        let id = exact((0..q).map(|i| (0..q).map(|j| ((i == j) as i64, 1)).collect()).collect());
        check(&id, q as f64 - 1.0, "identity");
    }
    let n = t.checks;
    Ok(t.finish(Suite::Capacity, format!("channels={n} (3 z, 9 erasure, 10 block-diagonal, 4 identity)")))
}
