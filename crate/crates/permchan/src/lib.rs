//! Command-line laboratory for noisy permutation channels, built on
//! `permchan-core`.

pub mod battery;
pub mod chfile;
pub mod cli;
pub mod oracle;
pub mod par;
pub mod report;
pub mod svg;
pub mod verify;
