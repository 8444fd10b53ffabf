use anyhow::Context;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use permchan_core::bounds::{mi_upper_bound, prob_a_stirling_bound};
use permchan_core::covering::net_for_n;
use permchan_core::exact::rational::{prob_a_given_ytype_rational, prob_a_rational, ytype_law_given_a_rational};
use permchan_core::exact::{
    divergence_exact_unchecked, gap, gap_profile, marginal_divergence, mutual_information_uniform_types,
    tightness_probe, QMode,
};
use permchan_core::math::regression_slope;
use permchan_core::{enumerate_ntypes, kl_divergence, output_marginal, ChannelModel, NTypeVector};

use super::{short, Suite, SuiteOutcome, Tally, VerifyConfig};
use crate::battery::{self, Instance};
use crate::oracle;

/// Largest tolerated `|direct − (n·D + gap)|`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Smallest tolerated gap.
pub const GAP_FLOOR: f64 = -1e-9;
/// Largest tolerated growth of the worst gap from `n = 4` to `n = 12`.
pub const BOUNDED_GROWTH: f64 = 0.5;
/// Target slope of the noiseless binary gap against `ln n`, and tolerance.
pub const IDENTITY_SLOPE: f64 = 0.5;
pub const IDENTITY_SLOPE_TOL: f64 = 0.075;
/// Smallest tolerated gap in the BSC(1/n) probe.
pub const TIGHTNESS_FLOOR: f64 = 0.01;

struct Evaluated {
    inst: Instance,
    n_d: f64,
    gap: f64,
    direct: f64,
    residual: f64,
}

fn evaluate(cfg: &VerifyConfig) -> anyhow::Result<(Vec<ChannelModel>, Vec<Evaluated>)> {
    let chs = battery::channels(cfg.seed);
    let insts = battery::instances(&chs, cfg.seed);
    let out = insts
        .into_par_iter()
        .map(|inst| {
            let ch = &chs[inst.channel];
            let p_y = output_marginal(&inst.pi.frequencies(), ch)?;
            let q = inst.q.clone().unwrap_or_else(|| p_y.as_slice().to_vec());
            let r = divergence_exact_unchecked(&inst.pi, ch, &q)?;
            Ok(Evaluated { n_d: r.term_iid, gap: r.gap, direct: r.direct, residual: r.residual, inst })
        })
        .collect::<permchan_core::Result<Vec<_>>>()?;
    Ok((chs, out))
}

fn describe(chs: &[ChannelModel], e: &Evaluated) -> String {
    format!(
        "channel [{}] pi={:?} q={:?}: direct={} n*D={} gap={} residual={}",
        short(&chs[e.inst.channel]),
        e.inst.pi.counts(),
        e.inst.q,
        e.direct,
        e.n_d,
        e.gap,
        e.residual
    )
}

/// The divergence of a type-class input splits into `n·D(P_Y‖Q)` plus the
/// gap, checked on every battery instance.
pub fn decomposition(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let (chs, evals) = evaluate(cfg)?;
    let mut t = Tally::default();
    t.check(evals.len() >= 200, || format!("only {} instances", evals.len()));
    let mut worst = 0.0f64;
    for e in &evals {
        worst = worst.max(e.residual);
        t.check(e.direct.is_finite() && e.residual <= RESIDUAL_TOL, || describe(&chs, e));
    }
    Ok(t.finish(Suite::Decomposition, format!("instances={} max_residual={worst:e} tol={RESIDUAL_TOL:e}", evals.len())))
}

/// The gap is a divergence between posteriors and is never negative.
pub fn lower(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let (chs, evals) = evaluate(cfg)?;
    let mut t = Tally::default();
    let mut min = f64::INFINITY;
    for e in &evals {
        min = min.min(e.gap);
        t.check(e.gap >= GAP_FLOOR, || describe(&chs, e));
    }
    Ok(t.finish(Suite::Lower, format!("instances={} min_gap={min:e} floor={GAP_FLOOR:e}", evals.len())))
}

fn worst_gap(ch: &ChannelModel, n: u32) -> anyhow::Result<f64> {
    let types = enumerate_ntypes(n, ch.q())?;
    let gaps = types.par_iter().map(|pi| gap(pi, ch)).collect::<permchan_core::Result<Vec<_>>>()?;
    Ok(gaps.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Worst-case gap growth between `n = 4` and `n = 12` on strictly positive
/// channels, and the `½ ln n` growth of the noiseless binary channel.
pub fn bounded(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let chs = battery::channels(cfg.seed);
    let mut t = Tally::default();
    let mut max_growth = f64::NEG_INFINITY;
    for ch in &chs {
        let growth = worst_gap(ch, 12)? - worst_gap(ch, 4)?;
        max_growth = max_growth.max(growth);
        t.check(growth <= BOUNDED_GROWTH, || format!("channel [{}]: growth {growth}", short(ch)));
    }
    let id = ChannelModel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let ns = [4u32, 6, 8, 10, 12];
    let rows = gap_profile(&id, &QMode::Marginal, &ns)?;
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.gap).collect();
    let slope = regression_slope(&xs, &ys);
    t.check((slope - IDENTITY_SLOPE).abs() <= IDENTITY_SLOPE_TOL, || format!("identity slope {slope}"));
    Ok(t.finish(
        Suite::Bounded,
        format!("channels={} max_growth={max_growth:.6} limit={BOUNDED_GROWTH} identity_slope={slope:.6}", chs.len()),
    ))
}

/// BSC with crossover `1/n` and a balanced input keeps a gap above a
/// positive floor.
pub fn tightness(_cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let rows = tightness_probe(&[4, 8, 12])?;
    let mut t = Tally::default();
    let mut min = f64::INFINITY;
    for r in &rows {
        min = min.min(r.gap);
        t.check(r.gap > TIGHTNESS_FLOOR, || format!("n={} gap={}", r.n, r.gap));
    }
    let gaps: Vec<String> = rows.iter().map(|r| format!("{}:{:.6}", r.n, r.gap)).collect();
    Ok(t.finish(Suite::Tightness, format!("min_gap={min:.6} floor={TIGHTNESS_FLOOR} gaps={}", gaps.join(","))))
}

/// Stirling bound on `−ln ℙ[A=1]`, the `m`-observation inequality against
/// exact marginals, and the mutual-information bound against exact values.
pub fn dominance(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let mut t = Tally::default();

    // Stirling, against exact rationals
    let mut stirling_checks = 0;
    let mut min_margin = f64::INFINITY;
    for q in 1..=4usize {
        for n in 1..=14u32 {
            for ty in enumerate_ntypes(n, q)? {
                let exact = -prob_a_rational(&ty).to_f64().context("probability underflow")?.ln();
                let bound = prob_a_stirling_bound(&ty);
                min_margin = min_margin.min(bound - exact);
                stirling_checks += 1;
                t.check(bound >= exact, || format!("stirling {:?}: bound {bound} < exact {exact}", ty.counts()));
            }
        }
    }

    // m-observation inequality on the battery, n ≤ 10
    let chs = battery::channels(cfg.seed);
    let insts: Vec<Instance> = battery::instances(&chs, cfg.seed).into_iter().filter(|i| i.pi.n() <= 10).collect();
    let marg = insts
        .par_iter()
        .map(|inst| {
            let ch = &chs[inst.channel];
            let n = inst.pi.n();
            let p_y = output_marginal(&inst.pi.frequencies(), ch)?;
            let q = inst.q.clone().unwrap_or_else(|| p_y.as_slice().to_vec());
            let d1 = kl_divergence(p_y.as_slice(), &q)?;
            let g = gap(&inst.pi, ch)?;
            let mut fails = Vec::new();
            let mut slack = f64::INFINITY;
            for m in 1..=n {
                let lhs = marginal_divergence(&inst.pi, ch, &q, m)?;
                let rhs = m as f64 * d1 + m as f64 / n as f64 * g;
                slack = slack.min(rhs - lhs);
                if lhs > rhs + 1e-10 {
                    fails.push(format!("pi={:?} q={:?} m={m}: {lhs} > {rhs}", inst.pi.counts(), inst.q));
                }
            }
            Ok((n as u64, fails, slack))
        })
        .collect::<permchan_core::Result<Vec<_>>>()?;
    let mut marg_checks = 0;
    let mut marg_slack = f64::INFINITY;
    for (count, fails, slack) in marg {
        marg_checks += count;
        marg_slack = marg_slack.min(slack);
        t.record(count, fails);
    }

    // mutual information, n ≤ 8
    let mut mi_checks = 0;
    let mut mi_margin = f64::INFINITY;
    for ch in &chs {
        for n in 1..=8u32 {
            let mi = mutual_information_uniform_types(ch, n)?;
            let c = worst_gap(ch, n)?;
            let net = net_for_n(ch, n)?;
            let bound = mi_upper_bound(ch, n, net.len(), c)?.value;
            mi_checks += 1;
            mi_margin = mi_margin.min(bound - mi);
            t.check(bound >= mi, || format!("channel [{}] n={n}: mi {mi} > bound {bound}", short(ch)));
        }
    }
    Ok(t.finish(
        Suite::Dominance,
        format!(
            "stirling={stirling_checks} min_margin={min_margin:e} m_obs={marg_checks} min_slack={marg_slack:e} mi={mi_checks} min_mi_margin={mi_margin:.4}"
        ),
    ))
}

/// Largest `k^n` covered by the sequence-level oracle.
pub const ORACLE_OUTPUTS: u64 = 729;
/// Posterior checks are limited to this block length.
pub const ORACLE_POSTERIOR_N: u32 = 6;

/// Type-level output laws and posteriors equal sequence-level enumeration
/// exactly on every battery channel with `k^n ≤ 3^6`.
pub fn oracle(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let chs = battery::channels(cfg.seed);
    let mut jobs: Vec<(usize, NTypeVector)> = Vec::new();
    for (c, ch) in chs.iter().enumerate() {
        for n in 1..=12u32 {
            if (ch.k() as u64).pow(n) > ORACLE_OUTPUTS {
                break;
            }
            for pi in enumerate_ntypes(n, ch.q())? {
                jobs.push((c, pi));
            }
        }
    }
    let results = jobs
        .par_iter()
        .map(|(c, pi)| -> anyhow::Result<Vec<(bool, String)>> {
            let ch = &chs[*c];
            let mut out = Vec::new();
            let seq = oracle::ytype_law(pi, ch)?;
            let typ = ytype_law_given_a_rational(pi, ch)?;
            let typ: std::collections::BTreeMap<_, _> =
                typ.into_iter().filter(|(_, p)| !num_traits::Zero::is_zero(p)).collect();
            out.push((seq == typ, format!("law mismatch for [{}] pi={:?}", short(ch), pi.counts())));

            let p_y = output_marginal(&pi.frequencies(), ch)?;
            let d_seq = oracle::divergence(pi, ch, p_y.as_slice())?;
            let d_typ = divergence_exact_unchecked(pi, ch, p_y.as_slice())?.direct;
            out.push((
                (d_seq - d_typ).abs() <= 1e-12 * d_typ.abs().max(1.0),
                format!("divergence {d_seq} vs {d_typ} for [{}] pi={:?}", short(ch), pi.counts()),
            ));

            if pi.n() <= ORACLE_POSTERIOR_N {
                for m in seq.keys() {
                    let y: Vec<usize> =
                        m.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize)).collect();
                    let a = oracle::posterior_given_sequence(pi, ch, &y)?;
                    let b = prob_a_given_ytype_rational(pi, ch, m)?;
                    out.push((a == b, format!("posterior {a} vs {b} for pi={:?} m={m:?}", pi.counts())));
                }
            }
            Ok(out)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut t = Tally::default();
    for (ok, what) in results.into_iter().flatten() {
        t.check(ok, || what);
    }
    Ok(t.finish(Suite::Oracle, format!("instances={} max_outputs={ORACLE_OUTPUTS}", jobs.len())))
}
