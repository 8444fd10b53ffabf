//! Parallel drivers over the core computations.
//!
//! Every reduction here is either a count or a maximum, so results do not
//! depend on how rayon splits the work.

use rayon::prelude::*;

use permchan_core::covering::SubspaceNet;
use permchan_core::ntype::Compositions;
use permchan_core::simulate::{
    build_block_code, build_grid_codebook, cell_seed, run_trial, Codebook, Decoder, DecoderKind, SweepCell,
    TrialOutcome,
};
use permchan_core::{kl_divergence, ChannelModel, Error};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "PERMCHAN_THREADS";

/// A pool sized by `PERMCHAN_THREADS` (all cores when unset or invalid).
pub fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&t| t > 0);
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    b.build().expect("thread pool")
}

pub fn simulate_error(
    book: &Codebook,
    ch: &ChannelModel,
    trials: u64,
    seed: u64,
    kind: DecoderKind,
) -> permchan_core::Result<TrialOutcome> {
    let decoder = Decoder::new(kind, book, ch)?;
    let errors = (0..trials).into_par_iter().filter(|&i| run_trial(book, ch, &decoder, seed, i)).count() as u64;
    Ok(TrialOutcome::from_counts(trials, errors))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CodeKind {
    Grid,
    Block,
}

/// Rate sweep with trials spread over threads. Cell seeds match
/// [`permchan_core::simulate::sweep`].
pub fn sweep(
    ch: &ChannelModel,
    rates: &[f64],
    ns: &[u32],
    trials: u64,
    seed: u64,
    kind: DecoderKind,
    code: CodeKind,
) -> permchan_core::Result<Vec<SweepCell>> {
    let mut out = Vec::new();
    for (ri, &rate) in rates.iter().enumerate() {
        for (ni, &n) in ns.iter().enumerate() {
            let book = match code {
                CodeKind::Grid => build_grid_codebook(ch, n, rate),
                CodeKind::Block => build_block_code(ch, n, rate),
            };
            out.push(match book {
                Ok(book) => SweepCell {
                    rate,
                    n: book.n,
                    m: Some(book.m()),
                    separated: book.separated,
                    outcome: Some(simulate_error(&book, ch, trials, cell_seed(seed, ri, ni), kind)?),
                    note: None,
                },
                Err(e @ Error::InfeasibleRate(_)) => {
                    SweepCell { rate, n, m: None, separated: false, outcome: None, note: Some(e.to_string()) }
                }
                Err(e) => return Err(e),
            });
        }
    }
    Ok(out)
}

/// Brute-force covering radius over the lattice of resolution `m`.
pub fn covering_radius_brute(centers: &[Vec<f64>], k: usize, m: u32) -> f64 {
    let mf = m as f64;
    Compositions::new(m, k)
        .par_bridge()
        .map(|t| {
            let p: Vec<f64> = t.iter().map(|&c| c as f64 / mf).collect();
            centers.iter().map(|c| kl_divergence(&p, c).unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Radius of a subspace net over the channel images of the input lattice.
pub fn subspace_covering_radius(net: &SubspaceNet, ch: &ChannelModel, m: u32) -> f64 {
    let mf = m as f64;
    Compositions::new(m, ch.q())
        .par_bridge()
        .map(|t| {
            let pi: Vec<f64> = t.iter().map(|&c| c as f64 / mf).collect();
            let mu: Vec<f64> = (0..ch.k()).map(|j| pi.iter().zip(ch.rows()).map(|(p, r)| p * r[j]).sum()).collect();
            net.centers.iter().map(|c| kl_divergence(&mu, c).unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}
