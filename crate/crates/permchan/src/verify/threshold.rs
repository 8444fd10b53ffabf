use permchan_core::simulate::DecoderKind;
use permchan_core::ChannelModel;

use super::{Suite, SuiteOutcome, Tally, VerifyConfig};
use crate::par::{self, CodeKind};

/// Rates below and above the capacity `1/2` of the test channel.
pub const LOW_RATE: f64 = 0.3;
pub const HIGH_RATE: f64 = 0.8;
pub const SHORT_N: u32 = 256;
pub const LONG_N: u32 = 4096;
/// Error rate the above-capacity cell must reach at the long block length.
pub const HIGH_RATE_FLOOR: f64 = 0.3;

/// BSC(0.1), whose capacity is `1/2`: below capacity the error falls with
/// `n` (disjoint Wilson intervals), above it the error stays large.
pub fn threshold(cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    let bsc = ChannelModel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]])?;
    let cells = par::sweep(
        &bsc,
        &[LOW_RATE, HIGH_RATE],
        &[SHORT_N, LONG_N],
        cfg.trials,
        cfg.seed,
        DecoderKind::MinDivergence,
        CodeKind::Grid,
    )?;
    let find = |rate: f64, n: u32| {
        cells
            .iter()
            .find(|c| c.rate == rate && c.n == n)
            .and_then(|c| c.outcome)
            .ok_or_else(|| anyhow::anyhow!("cell R={rate} n={n} is infeasible"))
    };
    let short = find(LOW_RATE, SHORT_N)?;
    let long = find(LOW_RATE, LONG_N)?;
    let high = find(HIGH_RATE, LONG_N)?;
    let mut t = Tally::default();
    t.check(long.rate < short.rate && long.disjoint_from(&short), || {
        format!("R={LOW_RATE}: err({LONG_N})={long:?} vs err({SHORT_N})={short:?}")
    });
    t.check(high.rate >= HIGH_RATE_FLOOR, || format!("R={HIGH_RATE}: err({LONG_N})={high:?}"));
    let fmt =
        |o: &permchan_core::simulate::TrialOutcome| format!("{:.5}[{:.5},{:.5}]", o.rate, o.wilson_lo, o.wilson_hi);
    Ok(t.finish(
        Suite::Threshold,
        format!(
            "trials={} low_rate_{SHORT_N}={} low_rate_{LONG_N}={} high_rate_{LONG_N}={}",
            cfg.trials,
            fmt(&short),
            fmt(&long),
            fmt(&high)
        ),
    ))
}
