//! Row-stochastic matrices and their structural classes.

use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::linalg;
use crate::rational::{is_nonnegative, rational_rank, to_f64, BigRational};
use crate::{Error, Result};

/// Row sums of floating channels must be within this of 1.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Default pivot tolerance for [`numerical_rank`].
pub const DEFAULT_RANK_TOLERANCE: f64 = 1e-9;

/// One connected component of the support graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub strictly_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
}

impl BlockStructure {
    pub fn beta(&self) -> usize {
        self.blocks.len()
    }

    pub fn all_strictly_positive(&self) -> bool {
        self.blocks.iter().all(|b| b.strictly_positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChannelClass {
    StrictlyPositive,
    BlockDiagonal(BlockStructure),
    /// `q` inputs, `q + 1` outputs; `erasure_column` is positive in every row.
    Erasure {
        erasure_column: usize,
    },
    ZChannel,
    Zigzag,
    General,
}

impl ChannelClass {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelClass::StrictlyPositive => "strictly-positive",
            ChannelClass::BlockDiagonal(_) => "block-diagonal",
            ChannelClass::Erasure { .. } => "erasure",
            ChannelClass::ZChannel => "z-channel",
            ChannelClass::Zigzag => "zigzag",
            ChannelClass::General => "general",
        }
    }
}

/// A `q × k` row-stochastic matrix with its detected class and rank.
///
/// When built from rationals the exact entries are kept alongside the
/// floating ones and every exact routine uses them.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelModel {
    rows: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<BigRational>>>,
    class: ChannelClass,
    rank: usize,
}

impl ChannelModel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(rows.len(), rows.iter().map(Vec::len))?;
        for (i, row) in rows.iter().enumerate() {
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::NotStochastic { row: i, sum: row.iter().sum() });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::NotStochastic { row: i, sum });
            }
        }
        let class = classify_support(&support(&rows));
        let rank = linalg::rank(&rows, DEFAULT_RANK_TOLERANCE);
        Ok(Self { rows, exact: None, class, rank })
    }

    /// Exact rows; each must sum to exactly one.
    pub fn from_rationals(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        check_shape(rows.len(), rows.iter().map(Vec::len))?;
        for (i, row) in rows.iter().enumerate() {
            let sum: BigRational = row.iter().sum();
            if !row.iter().all(is_nonnegative) || !sum.is_one() {
                return Err(Error::NotStochastic { row: i, sum: to_f64(&sum) });
            }
        }
        let floats: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(to_f64).collect()).collect();
        let class = classify_support(&support(&floats));
        let rank = rational_rank(&rows);
        Ok(Self { rows: floats, exact: Some(rows), class, rank })
    }

    /// Recomputes the rank with a custom pivot tolerance. Exact channels keep
    /// their exact rank.
    pub fn with_rank_tolerance(mut self, tol: f64) -> Self {
        self.rank = numerical_rank(&self, tol);
        self
    }

    pub fn q(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn exact(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    pub fn class(&self) -> &ChannelClass {
        &self.class
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.rows.iter().flatten().all(|p| *p > 0.0)
    }

    /// Whether every row is the same distribution (the rank-one case).
    pub fn rows_identical(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of rows that are extreme points of the convex hull of all rows.
    /// Duplicated rows count once.
    pub fn extreme_point_count(&self) -> usize {
        self.extreme_points().len()
    }

    /// Indices of rows that are extreme points (first occurrence of
    /// duplicates), tested at tolerance `1e-9`.
    pub fn extreme_points(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.q() {
            let duplicate = (0..i).any(|j| self.rows[j].iter().zip(&self.rows[i]).all(|(a, b)| (a - b).abs() <= 1e-12));
            if duplicate {
                continue;
            }
            let others: Vec<Vec<f64>> = (0..self.q())
                .filter(|&j| j != i)
                .filter(|&j| self.rows[j].iter().zip(&self.rows[i]).any(|(a, b)| (a - b).abs() > 1e-12))
                .map(|j| self.rows[j].clone())
                .collect();
            if !linalg::in_convex_hull(&self.rows[i], &others, 1e-9) {
                out.push(i);
            }
        }
        out
    }

    /// Same channel with rows and columns relabelled: new row `a` is old row
    /// `row_perm[a]`, new column `b` is old column `col_perm[b]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if let Some(exact) = &self.exact {
            let rows = row_perm.iter().map(|&i| col_perm.iter().map(|&j| exact[i][j].clone()).collect()).collect();
            return Self::from_rationals(rows);
        }
        let rows = row_perm.iter().map(|&i| col_perm.iter().map(|&j| self.rows[i][j]).collect()).collect();
        Self::new(rows)
    }
}

fn check_shape(q: usize, lens: impl Iterator<Item = usize>) -> Result<()> {
    if q == 0 {
        return Err(Error::InvalidParameter("channel has no rows".into()));
    }
    let lens: Vec<usize> = lens.collect();
    let k = lens[0];
    if k == 0 {
        return Err(Error::InvalidParameter("channel has no columns".into()));
    }
    if let Some(bad) = lens.iter().find(|&&l| l != k) {
        return Err(Error::Dimension { expected: k, got: *bad });
    }
    Ok(())
}

/// Builds and classifies a floating channel.
pub fn classify_channel(rows: Vec<Vec<f64>>) -> Result<ChannelModel> {
    ChannelModel::new(rows)
}

/// Row-reduction rank. Exact when the channel carries rational entries,
/// otherwise scaled partial pivoting with pivot threshold `tol`.
pub fn numerical_rank(ch: &ChannelModel, tol: f64) -> usize {
    match &ch.exact {
        Some(rows) => rational_rank(rows),
        None => linalg::rank(&ch.rows, tol),
    }
}

fn support(rows: &[Vec<f64>]) -> Vec<Vec<bool>> {
    rows.iter().map(|r| r.iter().map(|p| *p > 0.0).collect()).collect()
}

/// Classification depends only on the zero pattern. Precedence: strictly
/// positive, erasure, Z, zigzag, block diagonal, general.
fn classify_support(s: &[Vec<bool>]) -> ChannelClass {
    let q = s.len();
    let k = s[0].len();
    if s.iter().flatten().all(|b| *b) {
        return ChannelClass::StrictlyPositive;
    }
    if let Some(col) = erasure_column(s) {
        return ChannelClass::Erasure { erasure_column: col };
    }
    if q == 2 && k == 2 && s.iter().flatten().filter(|b| !**b).count() == 1 {
        return ChannelClass::ZChannel;
    }
    if is_zigzag(s) {
        return ChannelClass::Zigzag;
    }
    let blocks = components(s);
    if blocks.len() >= 2 {
        let blocks = blocks
            .into_iter()
            .map(|(inputs, outputs)| {
                let strictly_positive = inputs.iter().all(|&i| outputs.iter().all(|&j| s[i][j]));
                Block { inputs, outputs, strictly_positive }
            })
            .collect();
        return ChannelClass::BlockDiagonal(BlockStructure { blocks });
    }
    ChannelClass::General
}

fn erasure_column(s: &[Vec<bool>]) -> Option<usize> {
    let q = s.len();
    let k = s[0].len();
    if q < 2 || k != q + 1 {
        return None;
    }
    (0..k).find(|&e| {
        if !s.iter().all(|r| r[e]) {
            return false;
        }
        let rows_ok = s.iter().all(|r| (0..k).filter(|&j| j != e && r[j]).count() == 1);
        let cols_ok = (0..k).filter(|&j| j != e).all(|j| s.iter().filter(|r| r[j]).count() == 1);
        rows_ok && cols_ok
    })
}

/// Square support whose bipartite graph is one simple path through all
/// `2q` vertices (the upper-bidiagonal pattern up to relabelling).
fn is_zigzag(s: &[Vec<bool>]) -> bool {
    let q = s.len();
    if q < 3 || s[0].len() != q {
        return false;
    }
    let edges = s.iter().flatten().filter(|b| **b).count();
    if edges != 2 * q - 1 {
        return false;
    }
    let row_deg_ok = s.iter().all(|r| r.iter().filter(|b| **b).count() <= 2);
    let col_deg_ok = (0..q).all(|j| s.iter().filter(|r| r[j]).count() <= 2);
    // Connected with |E| = |V| − 1 is a tree; max degree 2 makes it a path.
    row_deg_ok && col_deg_ok && components(s).len() == 1 && (0..q).all(|j| s.iter().any(|r| r[j]))
}

/// Connected components of the support graph, ignoring all-zero columns.
/// Each component lists its sorted inputs and outputs; components are
/// ordered by their smallest input.
fn components(s: &[Vec<bool>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let q = s.len();
    let k = s[0].len();
    let mut parent: Vec<usize> = (0..q + k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, row) in s.iter().enumerate() {
        for (j, &on) in row.iter().enumerate() {
            if on {
                let (a, b) = (find(&mut parent, i), find(&mut parent, q + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut out: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..q {
        let root = find(&mut parent, i);
        match out.iter_mut().find(|c| c.0 == root) {
            Some(c) => c.1.push(i),
            None => out.push((root, alloc::vec![i], Vec::new())),
        }
    }
    for j in 0..k {
        if !s.iter().any(|r| r[j]) {
            continue;
        }
        let root = find(&mut parent, q + j);
        if let Some(c) = out.iter_mut().find(|c| c.0 == root) {
            c.2.push(j);
        }
    }
    out.into_iter().map(|(_, i, o)| (i, o)).collect()
}

/// Human-readable class label, including block metadata.
pub fn describe(ch: &ChannelModel) -> alloc::string::String {
    match ch.class() {
        ChannelClass::BlockDiagonal(b) => {
            format!("block-diagonal (beta = {}, blocks strictly positive: {})", b.beta(), b.all_strictly_positive())
        }
        other => other.name().into(),
    }
}
