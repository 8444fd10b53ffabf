use permchan_core::channel::*;
use permchan_core::numerical_rank;
use permchan_core::rational::ratio;
use permchan_core::rational::BigRational;
use permchan_core::ChannelModel;
use proptest::prelude::*;

fn ch(rows: &[&[f64]]) -> ChannelModel {
    ChannelModel::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn rank_examples() {
    let id3 = ch(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
    assert_eq!(numerical_rank(&id3, 1e-9), 3);
    assert_eq!(ch(&[&[0.5, 0.5], &[0.5, 0.5]]).rank(), 1);
    let avg = ch(&[&[0.6, 0.2, 0.2], &[0.2, 0.6, 0.2], &[0.4, 0.4, 0.2]]);
    assert_eq!(avg.rank(), 2);
    let exact = ChannelModel::from_rationals(vec![
        vec![ratio(3, 5), ratio(1, 5), ratio(1, 5)],
        vec![ratio(1, 5), ratio(3, 5), ratio(1, 5)],
        vec![ratio(2, 5), ratio(2, 5), ratio(1, 5)],
    ])
    .unwrap();
    assert_eq!(exact.rank(), 2);
    assert_eq!(numerical_rank(&exact, 1e-9), 2);
}

#[test]
fn classification_examples() {
    let id = ch(&[&[1.0, 0.0], &[0.0, 1.0]]);
    match id.class() {
        ChannelClass::BlockDiagonal(b) => {
            assert_eq!(b.beta(), 2);
            assert!(b.all_strictly_positive());
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(id.rank(), 2);
    let er = ch(&[&[0.7, 0.0, 0.3], &[0.0, 0.6, 0.4]]);
    assert_eq!(er.class(), &ChannelClass::Erasure { erasure_column: 2 });
    assert_eq!(ch(&[&[0.5, 0.5], &[0.0, 1.0]]).class(), &ChannelClass::ZChannel);
    assert_eq!(ch(&[&[0.9, 0.1], &[0.1, 0.9]]).class(), &ChannelClass::StrictlyPositive);
    let zz = ch(&[&[0.5, 0.5, 0.0], &[0.0, 0.3, 0.7], &[0.0, 0.0, 1.0]]);
    assert_eq!(zz.class(), &ChannelClass::Zigzag);
    assert_eq!(zz.rank(), 3);
    let gen = ch(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.5, 0.5, 0.0]]);
    assert_eq!(gen.class(), &ChannelClass::General);
}

#[test]
fn block_with_nonpositive_block_flagged() {
    let c = ch(&[&[0.5, 0.5, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.3, 0.7]]);
    match c.class() {
        ChannelClass::BlockDiagonal(b) => {
            assert_eq!(b.beta(), 2);
            assert!(!b.blocks[0].strictly_positive);
            assert!(b.blocks[1].strictly_positive);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn rejects_non_stochastic() {
    assert!(ChannelModel::new(vec![vec![0.5, 0.6]]).is_err());
    assert!(ChannelModel::new(vec![vec![1.5, -0.5]]).is_err());
    assert!(ChannelModel::new(vec![vec![0.5, 0.5], vec![1.0]]).is_err());
    assert!(ChannelModel::from_rationals(vec![vec![ratio(1, 3), ratio(1, 3)]]).is_err());
}

#[test]
fn extreme_points_of_rows() {
    let c = ch(&[&[0.6, 0.2, 0.2], &[0.2, 0.6, 0.2], &[0.4, 0.4, 0.2]]);
    assert_eq!(c.extreme_points(), vec![0, 1]);
    let dup = ch(&[&[0.5, 0.5], &[0.5, 0.5]]);
    assert_eq!(dup.extreme_point_count(), 1);
}

fn random_matrix() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>, Vec<usize>)> {
    (2usize..5, 2usize..5).prop_flat_map(|(q, k)| {
        let cell = prop_oneof![Just(0.0), 0.05f64..1.0];
        (
            proptest::collection::vec(proptest::collection::vec(cell, k), q),
            Just((0..q).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..k).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

fn normalize(rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            if r.iter().all(|x| *x == 0.0) {
                let len = r.len();
                r[i % len] = 1.0;
            }
            let s: f64 = r.iter().sum();
            let mut r: Vec<f64> = r.iter().map(|x| x / s).collect();
            // make the sum exactly 1 by assigning the rounding residue to
            // the largest entry
            let resid = 1.0 - r.iter().sum::<f64>();
            let jmax = (0..r.len()).max_by(|&a, &b| r[a].total_cmp(&r[b])).unwrap();
            r[jmax] += resid;
            r
        })
        .collect()
}

proptest! {
    #[test]
    fn class_invariant_under_permutation((rows, rp, cp) in random_matrix()) {
        let c = ChannelModel::new(normalize(rows)).unwrap();
        let p = c.permuted(&rp, &cp).unwrap();
        prop_assert_eq!(c.class().name(), p.class().name());
        prop_assert_eq!(c.rank(), p.rank());
        if let (ChannelClass::BlockDiagonal(a), ChannelClass::BlockDiagonal(b)) = (c.class(), p.class()) {
            prop_assert_eq!(a.beta(), b.beta());
            let mut sa: Vec<(usize, usize, bool)> = a.blocks.iter().map(|x| (x.inputs.len(), x.outputs.len(), x.strictly_positive)).collect();
            let mut sb: Vec<(usize, usize, bool)> = b.blocks.iter().map(|x| (x.inputs.len(), x.outputs.len(), x.strictly_positive)).collect();
            sa.sort();
            sb.sort();
            prop_assert_eq!(sa, sb);
        }
    }

    #[test]
    fn float_rank_matches_exact_rank(
        weights in proptest::collection::vec(proptest::collection::vec(0i64..4, 3), 2..5)
    ) {
        let rows: Vec<Vec<BigRational>> = weights
            .iter()
            .map(|w| {
                let w: Vec<i64> = if w.iter().all(|x| *x == 0) { vec![1, 0, 0] } else { w.clone() };
                let s: i64 = w.iter().sum();
                w.iter().map(|x| ratio(*x, s)).collect()
            })
            .collect();
        let exact = ChannelModel::from_rationals(rows).unwrap();
        let float = ChannelModel::new(exact.rows().to_vec());
        // float rows of exact rationals may be off by one ulp in the sum
        if let Ok(float) = float {
            prop_assert_eq!(float.rank(), exact.rank());
        }
        prop_assert_eq!(numerical_rank(&exact, 1e-9), exact.rank());
    }
}
