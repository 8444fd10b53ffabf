use num_bigint::BigInt;
use permchan::chfile::{format_channel, load_channel, parse_channel, sha256_hex, ChannelFileError};
use permchan_core::rational::BigRational;
use permchan_core::ChannelClass;

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn decimals_fractions_commas_and_comments() {
    let ch = parse_channel("# bsc\n2 2  # sizes\n0.9, 0.1\n\n1/10 9/10\n").unwrap();
    let rows = ch.exact().unwrap();
    assert_eq!(rows[0], vec![ratio(9, 10), ratio(1, 10)]);
    assert_eq!(rows[1], vec![ratio(1, 10), ratio(9, 10)]);
    assert_eq!(ch.row(0), &[0.9, 0.1]);
}

#[test]
fn small_row_sum_error_is_rescaled_exactly() {
    let ch = parse_channel("1 2\n0.5 0.5000000001\n").unwrap();
    let rows = ch.exact().unwrap();
    let sum: BigRational = rows[0].iter().sum();
    assert_eq!(sum, ratio(1, 1));
}

#[test]
fn rows_off_by_more_than_the_slack_are_rejected() {
    let err = parse_channel("1 2\n0.5 0.50001\n").unwrap_err();
    assert!(matches!(err, ChannelFileError::RowSum { row: 0, .. }), "{err}");
}

#[test]
fn malformed_files_are_syntax_errors() {
    for text in [
        "",
        "2\n1 0\n0 1\n",
        "2 2\n1 0\n",
        "2 2\n1 0\n0 1\n0 1\n",
        "2 2\n1 0 0\n0 1\n",
        "2 2\n1.5 -0.5\n0 1\n",
        "2 2\nx 1\n0 1\n",
    ] {
        let err = parse_channel(text).unwrap_err();
        assert!(matches!(err, ChannelFileError::Syntax { .. }), "{text:?}: {err}");
    }
}

#[test]
fn format_round_trips() {
    let ch = parse_channel("2 3\n1/3 1/3 1/3\n0 1/4 3/4\n").unwrap();
    let again = parse_channel(&format_channel(&ch)).unwrap();
    assert_eq!(ch.exact(), again.exact());
}

#[test]
fn sha256_matches_known_digest() {
    assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

#[test]
fn shipped_channels_load_with_their_classes() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../channels");
    let class = |name: &str| load_channel(&dir.join(name)).unwrap().model.class().clone();
    assert_eq!(class("z.ch"), ChannelClass::ZChannel);
    assert_eq!(class("erasure3.ch"), ChannelClass::Erasure { erasure_column: 3 });
    assert_eq!(class("zigzag3.ch"), ChannelClass::Zigzag);
    assert_eq!(class("bsc.ch"), ChannelClass::StrictlyPositive);
    assert!(load_channel(&dir.join("missing.ch")).is_err());
}
