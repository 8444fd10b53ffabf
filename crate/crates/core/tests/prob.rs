use num_traits::ToPrimitive;
use permchan_core::prob::*;
use permchan_core::rational::{ratio, BigRational};
use permchan_core::ChannelModel;
use permchan_core::Error;
use proptest::prelude::*;

#[test]
fn kl_identity_and_point_mass() {
    assert_eq!(kl_divergence(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
    let d = kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap();
    assert!((d - 2f64.ln()).abs() < 1e-15);
}

#[test]
fn kl_against_rational_product() {
    // Both p entries equal 1/2, so D = (1/2) ln Π(p_i / q_i); the product
    // is formed exactly.
    let p = [ratio(1, 2), ratio(1, 2)];
    let q = [ratio(1, 4), ratio(3, 4)];
    let prod: BigRational = p.iter().zip(&q).map(|(a, b)| a / b).product();
    assert_eq!(prod, ratio(4, 3));
    let expected = 0.5 * prod.to_f64().unwrap().ln();
    let d = kl_divergence(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
    assert!((d - expected).abs() < 1e-15);
    assert!((d - 0.143_841_036_225_890_2).abs() < 1e-12);
}

#[test]
fn kl_infinite_and_mismatch() {
    assert_eq!(kl_divergence(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), f64::INFINITY);
    assert_eq!(kl_divergence(&[0.0, 1.0], &[1.0, 0.0]).unwrap(), f64::INFINITY);
    assert_eq!(kl_divergence(&[0.0, 1.0], &[0.5, 0.5]).unwrap(), 2f64.ln());
    assert!(matches!(kl_divergence(&[1.0], &[0.5, 0.5]), Err(Error::Dimension { .. })));
}

#[test]
fn prob_vector_validation() {
    assert!(ProbVector::new(std::vec![0.5, 0.6]).is_err());
    assert!(ProbVector::new(std::vec![-0.1, 1.1]).is_err());
    assert!(ProbVector::new(std::vec![]).is_err());
    let p = ProbVector::from_counts(&[1, 3]).unwrap();
    assert_eq!(p.as_slice(), &[0.25, 0.75]);
}

#[test]
fn marginal_examples() {
    let id = ChannelModel::new(std::vec![std::vec![1.0, 0.0], std::vec![0.0, 1.0]]).unwrap();
    assert_eq!(output_marginal(&[0.3, 0.7], &id).unwrap().as_slice(), &[0.3, 0.7]);
    let bsc = ChannelModel::new(std::vec![std::vec![0.9, 0.1], std::vec![0.1, 0.9]]).unwrap();
    let m = output_marginal(&[0.5, 0.5], &bsc).unwrap();
    assert!((m[0] - 0.5).abs() < 1e-15 && (m[1] - 0.5).abs() < 1e-15);
    assert_eq!(output_marginal(&[1.0, 0.0], &bsc).unwrap().as_slice(), &[0.9, 0.1]);
    assert!(output_marginal(&[1.0], &bsc).is_err());
}

fn simplex_point(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.001f64..1.0, len).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    })
}

proptest! {
    #[test]
    fn kl_nonnegative_zero_only_on_diagonal(p in simplex_point(4), q in simplex_point(4)) {
        let d = kl_divergence(&p, &q).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert!(kl_divergence(&p, &p).unwrap().abs() < 1e-14);
        let dist: f64 = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum();
        if dist > 1e-3 {
            prop_assert!(d > 0.0);
        }
    }

    #[test]
    fn marginal_stays_in_simplex(
        rows in proptest::collection::vec(simplex_point(3), 1..5),
        seed in simplex_point(4),
    ) {
        let q = rows.len();
        let pi: Vec<f64> = {
            let w = &seed[..q.min(4)];
            let s: f64 = w.iter().sum();
            w.iter().map(|x| x / s).collect()
        };
        let ch = ChannelModel::new(rows[..pi.len()].to_vec()).unwrap();
        let m = output_marginal(&pi, &ch).unwrap();
        prop_assert!((m.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(m.as_slice().iter().all(|x| *x >= 0.0));
    }
}
