//! Verification suites.
//!
//! Each suite checks one family of properties at desk scale and reports a
//! single pass/fail verdict with the measured quantities behind it.

mod exact;
mod geometry;
mod threshold;

use std::fmt;

use permchan_core::ChannelModel;

pub use exact::{bounded, decomposition, dominance, lower, oracle, tightness};
pub use geometry::{capacity, covering, subspace};
pub use threshold::threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    /// Exact divergence equals `n·D(P_Y‖Q)` plus the gap term.
    Decomposition,
    /// The gap term is never negative.
    Lower,
    /// The gap stays bounded for strictly positive channels and grows like
    /// `½ ln n` for the noiseless binary channel.
    Bounded,
    /// The gap of BSC(1/n) with a balanced input does not vanish.
    Tightness,
    /// Simplex nets meet their radius and size bounds.
    Covering,
    /// Nets of channel images meet their size bound and stay in the hull.
    Subspace,
    /// Closed-form capacities of the solved classes.
    Capacity,
    /// Simulated error falls below capacity and stays high above it.
    Threshold,
    /// Analytic bounds dominate the exact quantities.
    Dominance,
    /// Type-level laws match a sequence-level enumeration exactly.
    Oracle,
    /// `decomposition`, `lower` and `bounded` together.
    Sandwich,
    /// Every suite.
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Decomposition,
        Suite::Lower,
        Suite::Bounded,
        Suite::Tightness,
        Suite::Covering,
        Suite::Subspace,
        Suite::Capacity,
        Suite::Threshold,
        Suite::Dominance,
        Suite::Oracle,
    ];

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::Sandwich => vec![Suite::Decomposition, Suite::Lower, Suite::Bounded],
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Decomposition => "decomposition",
            Suite::Lower => "lower",
            Suite::Bounded => "bounded",
            Suite::Tightness => "tightness",
            Suite::Covering => "covering",
            Suite::Subspace => "subspace",
            Suite::Capacity => "capacity",
            Suite::Threshold => "threshold",
            Suite::Dominance => "dominance",
            Suite::Oracle => "oracle",
            Suite::Sandwich => "sandwich",
            Suite::All => "all",
        }
    }

    /// Position in the acceptance list (1-based).
    pub fn criterion(self) -> Option<usize> {
        Suite::EACH.iter().position(|&s| s == self).map(|i| i + 1)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Seed of the channel battery and of every random choice in the suites.
    pub seed: u64,
    /// Lattice resolution for covering certificates (at least 500).
    pub grid: u32,
    /// Monte Carlo trials per threshold cell.
    pub trials: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: crate::battery::BATTERY_SEED, grid: 500, trials: 20_000 }
    }
}

/// Verdict of one suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: u64,
    pub failures: u64,
    /// Measured quantities, `key=value` separated by spaces.
    pub summary: String,
    /// The first few failing checks.
    pub details: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.suite.criterion().map(|c| format!("criterion {c:>2} ")).unwrap_or_default();
        write!(
            f,
            "{tag}{:<10} {}  checks={} failures={} {}",
            self.suite.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failures,
            self.summary
        )
    }
}

/// Tallies checks and keeps a bounded list of failures.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checks: u64,
    pub failures: u64,
    pub details: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.details.len() < 10 {
                self.details.push(what());
            }
        }
    }

    /// `checks` checks of which `failed` went wrong.
    pub fn record(&mut self, checks: u64, failed: Vec<String>) {
        self.checks += checks;
        self.failures += failed.len() as u64;
        let room = 10usize.saturating_sub(self.details.len());
        self.details.extend(failed.into_iter().take(room));
    }

    pub fn finish(self, suite: Suite, summary: String) -> SuiteOutcome {
        SuiteOutcome { suite, checks: self.checks, failures: self.failures, summary, details: self.details }
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> anyhow::Result<SuiteOutcome> {
    Ok(match suite {
        Suite::Decomposition => decomposition(cfg)?,
        Suite::Lower => lower(cfg)?,
        Suite::Bounded => bounded(cfg)?,
        Suite::Tightness => tightness(cfg)?,
        Suite::Covering => covering(cfg)?,
        Suite::Subspace => subspace(cfg)?,
        Suite::Capacity => capacity(cfg)?,
        Suite::Threshold => threshold(cfg)?,
        Suite::Dominance => dominance(cfg)?,
        Suite::Oracle => oracle(cfg)?,
        Suite::Sandwich | Suite::All => anyhow::bail!("{} is a group of suites", suite.name()),
    })
}

pub(crate) fn short(ch: &ChannelModel) -> String {
    crate::chfile::format_channel(ch).lines().skip(1).collect::<Vec<_>>().join(" / ")
}
