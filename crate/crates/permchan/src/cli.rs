//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use permchan_core::bounds::{bound_table, capacity_value, Capacity, PETROV_ALPHA};
use permchan_core::covering::{
    covering_radius, net_for_n, simplex_net_with_gamma, subspace_net_with_gamma, DEFAULT_GAMMA,
};
use permchan_core::exact::{divergence_exact, gap_profile, QMode};
use permchan_core::simulate::DecoderKind;
use permchan_core::{output_marginal, ChannelModel, NTypeVector};

use crate::chfile::{load_channel, ChannelFile};
use crate::par::{self, CodeKind};
use crate::report::{join, num, Format, Table};
use crate::svg;
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Laboratory for noisy permutation channels. All logarithms are natural.
#[derive(Debug, Parser)]
#[command(name = "permchan", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a channel and report its capacity or capacity bounds.
    Capacity(ChannelArg),
    /// Build a divergence ε-net of the simplex (or of a channel image).
    Cover(CoverArgs),
    /// Exact divergence of a type-class input, or a gap profile.
    Divergence(DivergenceArgs),
    /// Analytic bounds for a channel.
    Bounds(BoundsArgs),
    /// Monte Carlo error rates of explicit codebooks.
    Simulate(SimulateArgs),
    /// Run verification suites; exits with 3 if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ChannelArg {
    /// Channel file.
    #[arg(long)]
    pub channel: PathBuf,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    /// Alphabet size.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64), required_unless_present = "channel")]
    pub k: Option<u32>,
    /// Target radius in nats, in (0, 1].
    #[arg(long, value_parser = parse_eps)]
    pub eps: f64,
    /// Refinement factor of the construction.
    #[arg(long, default_value_t = DEFAULT_GAMMA, value_parser = parse_positive)]
    pub gamma: f64,
    /// Certify the radius on the lattice of this resolution.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub certify: Option<u32>,
    /// Cover the image of this channel instead of the whole simplex.
    #[arg(long, conflicts_with = "k")]
    pub channel: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    #[arg(long)]
    pub channel: PathBuf,
    /// Block length; must match the sum of `--pi`.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: Option<u32>,
    /// Input type as counts, e.g. `4,4`.
    #[arg(long, value_delimiter = ',', required_unless_present = "profile")]
    pub pi: Vec<u32>,
    /// Reference law; the output marginal when omitted.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<f64>>,
    /// Worst-case gap over all input types for block lengths `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub profile: Option<(u32, u32)>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Concentration constant; the calibrated value by default.
    #[arg(long, default_value_t = PETROV_ALPHA, value_parser = parse_positive)]
    pub alpha: f64,
    /// Also build the radius-1/n net of the channel image for the
    /// mutual-information bound.
    #[arg(long)]
    pub net: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub channel: PathBuf,
    /// Rates `log M / log n`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_positive)]
    pub rates: Vec<f64>,
    /// Block lengths.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub ns: Vec<u32>,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = DecoderArg::MinDivergence)]
    pub decoder: DecoderArg,
    #[arg(long, value_enum, default_value_t = CodeKind::Grid)]
    pub code: CodeKind,
    /// Also draw error rate against ln n, one line per rate.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DecoderArg {
    MinDivergence,
    ExactMl,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::MinDivergence => DecoderKind::MinDivergence,
            DecoderArg::ExactMl => DecoderKind::ExactMl,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = crate::battery::BATTERY_SEED)]
    pub seed: u64,
    /// Lattice resolution of covering certificates.
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u32).range(500..))]
    pub grid: u32,
    /// Trials per threshold cell.
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} is not a positive number"))
    }
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let x = parse_positive(s)?;
    if x <= 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is outside (0, 1]"))
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{e}"))?;
    if a == 0 || b < a {
        return Err(format!("empty or invalid range {s}"));
    }
    Ok((a, b))
}

/// Runs a parsed command and returns the process exit code. Errors are
/// printed to standard error.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_RUNTIME
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn dispatch(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Capacity(a) => emit(cli, &capacity_table(&load(&a.channel)?)).map(|_| EXIT_OK),
        Command::Cover(a) => emit(cli, &cover_table(a)?).map(|_| EXIT_OK),
        Command::Divergence(a) => emit(cli, &divergence_table(a)?).map(|_| EXIT_OK),
        Command::Bounds(a) => emit(cli, &bounds_table(a)?).map(|_| EXIT_OK),
        Command::Simulate(a) => {
            let (table, chart) = simulate_table(a)?;
            if let (Some(path), Some(chart)) = (&a.svg, chart) {
                std::fs::write(path, chart).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(cli, &table).map(|_| EXIT_OK)
        }
        Command::Verify(a) => {
            let (table, ok) = verify_table(a)?;
            emit(cli, &table)?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn load(path: &Path) -> anyhow::Result<ChannelFile> {
    Ok(load_channel(path)?)
}

fn emit(cli: &Cli, table: &Table) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            table.write(&mut f, cli.format)?;
            f.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, cli.format)?;
        }
    }
    Ok(())
}

fn with_channel(table: &mut Table, file: &ChannelFile) {
    table.meta("seed", "none");
    table.meta("channel-sha256", &file.sha256);
}

pub fn capacity_table(file: &ChannelFile) -> Table {
    let ch = &file.model;
    let mut t = Table::new(
        "capacity",
        &["class", "q", "k", "rank", "capacity", "lower", "upper", "conditional_upper", "formula"],
    );
    with_channel(&mut t, file);
    let cap = capacity_value(ch);
    let (value, cond) = match &cap {
        Capacity::Exact { value, .. } => (num(*value), String::new()),
        Capacity::BoundsOnly { conditional_upper, .. } => {
            (String::new(), conditional_upper.map(num).unwrap_or_default())
        }
    };
    t.push(vec![
        ch.class().name().into(),
        ch.q().to_string(),
        ch.k().to_string(),
        ch.rank().to_string(),
        value,
        num(cap.lower()),
        num(cap.upper()),
        cond,
        cap.formula().into(),
    ]);
    t
}

pub fn cover_table(a: &CoverArgs) -> anyhow::Result<Table> {
    let (centers, k, size_note, radius) = match &a.channel {
        Some(path) => {
            let file = load(path)?;
            let ch = &file.model;
            let net = subspace_net_with_gamma(ch, a.eps, a.gamma)?;
            let radius = a.certify.map(|m| par::subspace_covering_radius(&net, ch, m));
            let note = format!("rank={} simplex_net={} subsets={}", net.ell, net.simplex_size, net.corners.len());
            let mut t = Table::new("cover", &[]);
            with_channel(&mut t, &file);
            (net.centers, ch.k(), (note, Some(file.sha256)), radius)
        }
        None => {
            let k = a.k.ok_or_else(|| usage("--k or --channel is required"))? as usize;
            let net = simplex_net_with_gamma(k, a.eps, a.gamma)?;
            let radius = match a.certify {
                Some(m) => Some(covering_radius(&net, m)?),
                None => None,
            };
            let note = format!("measured_c={}", num(net.measured_c()));
            (net.centers, k, (note, None), radius)
        }
    };
    let header: Vec<String> = (1..=k).map(|j| format!("p{j}")).collect();
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut t = Table::new("cover", &header_refs);
    t.meta("seed", "none");
    if let Some(hash) = size_note.1 {
        t.meta("channel-sha256", hash);
    }
    t.meta("eps", num(a.eps)).meta("gamma", num(a.gamma)).meta("centers", centers.len()).meta("net", size_note.0);
    for c in &centers {
        t.push(c.iter().map(|x| num(*x)).collect());
    }
    if let (Some(m), Some(r)) = (a.certify, radius) {
        let verdict = if r <= a.eps { "certified" } else { "NOT certified" };
        t.footer.push(format!("radius on lattice m={m}: {} <= eps {}: {verdict}", num(r), num(a.eps)));
    }
    Ok(t)
}

pub fn divergence_table(a: &DivergenceArgs) -> anyhow::Result<Table> {
    let file = load(&a.channel)?;
    let ch = &file.model;
    if let Some((lo, hi)) = a.profile {
        let mode = match &a.q {
            Some(q) => QMode::Fixed(q.clone()),
            None => QMode::Marginal,
        };
        let ns: Vec<u32> = (lo..=hi).collect();
        let rows = gap_profile(ch, &mode, &ns)?;
        let mut t = Table::new("divergence", &["n", "worst_pi", "gap", "divergence"]);
        with_channel(&mut t, &file);
        for r in rows {
            t.push(vec![r.n.to_string(), join_u32(r.worst_pi.counts()), num(r.gap), num(r.divergence)]);
        }
        return Ok(t);
    }
    if a.pi.len() != ch.q() {
        return Err(usage(format!("--pi needs {} counts, got {}", ch.q(), a.pi.len())));
    }
    let pi = NTypeVector::new(a.pi.clone()).map_err(|e| usage(e.to_string()))?;
    if let Some(n) = a.n {
        if n != pi.n() {
            return Err(usage(format!("--pi sums to {}, not --n {n}", pi.n())));
        }
    }
    let q = match &a.q {
        Some(q) => q.clone(),
        None => output_marginal(&pi.frequencies(), ch)?.into_vec(),
    };
    let r = divergence_exact(&pi, ch, &q)?;
    let mut t = Table::new(
        "divergence",
        &["n", "pi", "q", "p_y", "n_times_d", "gap", "direct", "residual", "infinite_symbols"],
    );
    with_channel(&mut t, &file);
    t.push(vec![
        r.n.to_string(),
        join_u32(pi.counts()),
        join(&q, " "),
        join(&r.p_y, " "),
        num(r.term_iid),
        num(r.gap),
        num(r.direct),
        num(r.residual),
        r.infinite_symbols.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" "),
    ]);
    Ok(t)
}

fn join_u32(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn bounds_table(a: &BoundsArgs) -> anyhow::Result<Table> {
    let file = load(&a.channel)?;
    let ch: &ChannelModel = &file.model;
    let net_size = if a.net { Some(net_for_n(ch, a.n)?.len()) } else { None };
    let mut t = Table::new("bounds", &["name", "inputs", "value", "formula"]);
    with_channel(&mut t, &file);
    t.meta("alpha", num(a.alpha)).meta("n", a.n);
    for b in bound_table(ch, a.n, a.alpha, net_size) {
        t.push(vec![b.name, b.inputs, num(b.value), b.formula]);
    }
    Ok(t)
}

pub fn simulate_table(a: &SimulateArgs) -> anyhow::Result<(Table, Option<String>)> {
    let file = load(&a.channel)?;
    let ch = &file.model;
    let cells = par::sweep(ch, &a.rates, &a.ns, a.trials, a.seed, a.decoder.into(), a.code)?;
    let mut t = Table::new(
        "simulate",
        &["rate", "n", "M", "trials", "errors", "err_rate", "wilson_lo", "wilson_hi", "separated", "note"],
    );
    t.meta("seed", a.seed);
    t.meta("channel-sha256", &file.sha256);
    t.meta("decoder", DecoderKind::from(a.decoder).name()).meta("code", format!("{:?}", a.code).to_lowercase());
    t.meta("rng", "ChaCha8, stream = trial index");
    for c in &cells {
        let m = c.m.map(|m| m.to_string()).unwrap_or_default();
        let (trials, errors, rate, lo, hi) = match &c.outcome {
            Some(o) => (o.trials.to_string(), o.errors.to_string(), num(o.rate), num(o.wilson_lo), num(o.wilson_hi)),
            None => Default::default(),
        };
        t.push(vec![
            num(c.rate),
            c.n.to_string(),
            m,
            trials,
            errors,
            rate,
            lo,
            hi,
            c.separated.to_string(),
            c.note.clone().unwrap_or_default(),
        ]);
    }
    let chart = a.svg.as_ref().map(|_| {
        let series: Vec<svg::Series> = a
            .rates
            .iter()
            .map(|&r| svg::Series {
                label: format!("R = {r}"),
                points: cells
                    .iter()
                    .filter(|c| c.rate == r)
                    .filter_map(|c| c.outcome.map(|o| ((c.n as f64).ln(), o.rate)))
                    .collect(),
            })
            .collect();
        svg::line_chart("Decoding error", "ln n", "error rate", &series)
    });
    Ok((t, chart))
}

pub fn verify_table(a: &VerifyArgs) -> anyhow::Result<(Table, bool)> {
    let cfg = VerifyConfig { seed: a.seed, grid: a.grid, trials: a.trials };
    let mut t = Table::new("verify", &["criterion", "suite", "result", "checks", "failures", "summary"]);
    t.meta("seed", a.seed).meta("grid", a.grid).meta("trials", a.trials);
    let mut all_ok = true;
    for suite in a.suite.expand() {
        let o = verify::run(suite, &cfg)?;
        all_ok &= o.passed();
        for d in &o.details {
            t.footer.push(format!("{}: {d}", suite.name()));
        }
        t.push(vec![
            suite.criterion().map(|c| c.to_string()).unwrap_or_default(),
            suite.name().into(),
            if o.passed() { "PASS".into() } else { "FAIL".into() },
            o.checks.to_string(),
            o.failures.to_string(),
            o.summary,
        ]);
    }
    Ok((t, all_ok))
}
