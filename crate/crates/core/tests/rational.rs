use num_bigint::BigUint;
use permchan_core::rational::*;

#[test]
fn parses_fractions_and_decimals() {
    assert_eq!(parse_rational("3/10").unwrap(), ratio(3, 10));
    assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
    assert_eq!(parse_rational(" .25 ").unwrap(), ratio(1, 4));
    assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
    assert_eq!(parse_rational("2.5e-1").unwrap(), ratio(1, 4));
    assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    assert!(parse_rational(".").is_err());
}

#[test]
fn exact_rank() {
    let rows = [
        [ratio(3, 5), ratio(1, 5), ratio(1, 5)],
        [ratio(1, 5), ratio(3, 5), ratio(1, 5)],
        [ratio(2, 5), ratio(2, 5), ratio(1, 5)],
    ];
    let rows: Vec<Vec<_>> = rows.iter().map(|r| r.to_vec()).collect();
    assert_eq!(rational_rank(&rows), 2);
    let id: Vec<Vec<_>> = (0..3).map(|i| (0..3).map(|j| ratio((i == j) as i64, 1)).collect()).collect();
    assert_eq!(rational_rank(&id), 3);
}

#[test]
fn multinomials() {
    assert_eq!(multinomial_coefficient(&[2, 2]), BigUint::from(6u32));
    assert_eq!(multinomial_prob(&[2, 1], &[ratio(2, 3), ratio(1, 3)]), ratio(4, 9));
}
