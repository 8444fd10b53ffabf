//! Channel files.
//!
//! ```text
//! # binary symmetric channel
//! 2 2
//! 0.9 0.1
//! 1/10 9/10
//! ```
//!
//! The first line gives `q k`, then `q` rows of `k` entries follow. Entries
//! are decimals or fractions and are kept as exact rationals. `#` starts a
//! comment. A row may be off by at most `1e-9` from summing to one; it is
//! then rescaled exactly.

use std::path::Path;

use num_traits::{One, Signed, ToPrimitive, Zero};
use permchan_core::rational::{parse_rational, BigRational};
use permchan_core::ChannelModel;
use sha2::{Digest, Sha256};

/// Largest tolerated deviation of a row sum from one.
pub const ROW_SUM_SLACK: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum ChannelFileError {
    #[error("cannot read {path}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("row {row} sums to {sum}, more than {ROW_SUM_SLACK} away from 1")]
    RowSum { row: usize, sum: f64 },
    #[error(transparent)]
    Model(#[from] permchan_core::Error),
}

/// A parsed channel plus the SHA-256 of the file it came from.
#[derive(Debug, Clone)]
pub struct ChannelFile {
    pub model: ChannelModel,
    pub sha256: String,
}

pub fn load_channel(path: &Path) -> Result<ChannelFile, ChannelFileError> {
    let bytes =
        std::fs::read(path).map_err(|source| ChannelFileError::Io { path: path.display().to_string(), source })?;
    let text = String::from_utf8_lossy(&bytes);
    Ok(ChannelFile { model: parse_channel(&text)?, sha256: sha256_hex(&bytes) })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn parse_channel(text: &str) -> Result<ChannelModel, ChannelFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(ChannelFileError::Syntax { line: 1, msg: "empty channel file".into() })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| ChannelFileError::Syntax { line, msg: format!("expected \"q k\", got {header:?}") })?;
    let [q, k] = dims[..] else {
        return Err(ChannelFileError::Syntax { line, msg: format!("expected \"q k\", got {header:?}") });
    };
    if q == 0 || k == 0 {
        return Err(ChannelFileError::Syntax { line, msg: "alphabet sizes must be positive".into() });
    }

    let mut rows = Vec::with_capacity(q);
    for (line, text) in lines.by_ref() {
        let row: Vec<BigRational> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_rational(t).map_err(|e| ChannelFileError::Syntax { line, msg: e.to_string() }))
            .collect::<Result<_, _>>()?;
        if row.len() != k {
            return Err(ChannelFileError::Syntax { line, msg: format!("expected {k} entries, got {}", row.len()) });
        }
        if row.iter().any(|x| x.is_negative()) {
            return Err(ChannelFileError::Syntax { line, msg: "negative entry".into() });
        }
        rows.push(row);
        if rows.len() == q {
            break;
        }
    }
    if rows.len() != q {
        return Err(ChannelFileError::Syntax {
            line: text.lines().count(),
            msg: format!("expected {q} rows, got {}", rows.len()),
        });
    }
    if let Some((line, extra)) = lines.next() {
        return Err(ChannelFileError::Syntax { line, msg: format!("unexpected trailing content {extra:?}") });
    }

    for (i, row) in rows.iter_mut().enumerate() {
        let sum: BigRational = row.iter().sum();
        let off = (&sum - BigRational::one()).abs().to_f64().unwrap_or(f64::INFINITY);
        if off > ROW_SUM_SLACK || sum.is_zero() {
            return Err(ChannelFileError::RowSum { row: i, sum: sum.to_f64().unwrap_or(f64::NAN) });
        }
        if !sum.is_one() {
            for x in row.iter_mut() {
                *x = &*x / &sum;
            }
        }
    }
    Ok(ChannelModel::from_rationals(rows)?)
}

/// Renders a channel in the file format, rationals verbatim.
pub fn format_channel(ch: &ChannelModel) -> String {
    let mut out = format!("{} {}\n", ch.q(), ch.k());
    for i in 0..ch.q() {
        let cells: Vec<String> = match ch.exact() {
            Some(rows) => rows[i].iter().map(|x| x.to_string()).collect(),
            None => ch.row(i).iter().map(|x| x.to_string()).collect(),
        };
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
