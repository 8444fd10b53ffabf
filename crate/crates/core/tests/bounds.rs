mod analytic {
    use permchan_core::bounds::*;
    use permchan_core::ChannelModel;
    use permchan_core::Error;

    fn ch(rows: &[&[f64]]) -> ChannelModel {
        ChannelModel::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gap_constant_examples() {
        let alpha = 0.5;
        let u = ch(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert_eq!(c_star(&u), 1.0);
        let want = 0.5 * (2.0 * core::f64::consts::PI * alpha * alpha).ln() + 2.0 / 12.0;
        assert!((gap_constant(&u, alpha, None).unwrap() - want).abs() < 1e-15);
        let bsc = ch(&[&[0.9, 0.1], &[0.1, 0.9]]);
        assert!((c_star(&bsc) - 1.0 / 9.0).abs() < 1e-15);
        let z = ch(&[&[0.5, 0.5], &[0.0, 1.0]]);
        assert_eq!(c_star(&z), 0.0);
        assert_eq!(gap_constant(&z, alpha, None), Err(Error::NotStrictlyPositive));
        let refined = gap_constant(&bsc, alpha, Some(10)).unwrap();
        assert!((gap_constant(&bsc, alpha, None).unwrap() - refined - (2.0 / 12.0 - 2.0 / 120.0)).abs() < 1e-15);
    }

    #[test]
    fn stam_examples() {
        let one = stam_bounds(3, 10, 1, 2.0).unwrap();
        assert_eq!(one.stam, 0.0);
        let full = stam_bounds(2, 12, 12, 2.0).unwrap();
        assert!((full.stam - 0.5 * 12.0).abs() < 1e-12);
        assert_eq!(full.large_m, None);
        let half = stam_bounds(2, 12, 6, 1.0).unwrap();
        // t/(n−t) summed for t < m equals the harmonic form
        let direct: f64 = (1..6).map(|t| t as f64 / (12 - t) as f64).sum::<f64>() / 11.0;
        assert!((half.large_m.unwrap() - direct).abs() < 1e-14);
        assert!(stam_bounds(2, 5, 6, 1.0).is_err());
    }

    #[test]
    fn crossover_and_zigzag() {
        let c = stam_crossover(PETROV_ALPHA, 1.0, 0.5);
        // γ/(1−γ) = 1 beats 2 ln 2
        assert!((c.rhs - 1.0).abs() < 1e-15);
        assert_eq!(c.holds, c.lhs <= c.rhs);
        assert_eq!(zigzag_conditional_bound(3).value, 1.5);
        assert_eq!(zigzag_conditional_bound(1).value, 0.0);
        assert_eq!(zigzag_conditional_bound(5).gap_to_achievable, 1.0);
        assert!(zigzag_conditional_bound(4).even_q_caveat);
    }

    #[test]
    fn mi_bound_rank_one_is_flat() {
        let r = ch(&[&[0.3, 0.7], &[0.3, 0.7]]);
        let b = mi_upper_bound(&r, 100, 1, 0.0).unwrap();
        assert_eq!(b.ell, 0);
        assert_eq!(b.value, 1.0);
        let table = bound_table(&r, 100, PETROV_ALPHA, Some(1));
        assert!(table.iter().any(|row| row.name == "mi_upper_bound"));
    }
}

mod capacity {
    use permchan_core::bounds::*;
    use permchan_core::ChannelModel;

    fn ch(rows: &[&[f64]]) -> ChannelModel {
        ChannelModel::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn solved_classes() {
        assert_eq!(capacity_value(&ch(&[&[0.5, 0.5], &[0.0, 1.0]])).value(), Some(0.5));
        let er3 = ch(&[&[0.8, 0.0, 0.0, 0.2], &[0.0, 0.5, 0.0, 0.5], &[0.0, 0.0, 0.9, 0.1]]);
        assert_eq!(capacity_value(&er3).value(), Some(1.0));
        for q in 2..6usize {
            let rows: Vec<Vec<f64>> = (0..q).map(|i| (0..q).map(|j| (i == j) as u8 as f64).collect()).collect();
            let id = ChannelModel::new(rows).unwrap();
            assert_eq!(capacity_value(&id).value(), Some(q as f64 - 1.0));
        }
        assert_eq!(capacity_value(&ch(&[&[0.9, 0.1], &[0.1, 0.9]])).value(), Some(0.5));
    }

    #[test]
    fn unsolved_classes_report_bounds() {
        let zz = ch(&[&[0.5, 0.5, 0.0], &[0.0, 0.3, 0.7], &[0.0, 0.0, 1.0]]);
        match capacity_value(&zz) {
            Capacity::BoundsOnly { lower, upper, conditional_upper, .. } => {
                assert_eq!(lower, 1.0);
                assert_eq!(upper, 2.0);
                assert_eq!(conditional_upper, Some(1.5));
            }
            other => panic!("{other:?}"),
        }
        // contains a noiseless binary sub-channel, so capacity is at least 1
        let gen = ch(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.5, 0.5, 0.0]]);
        let cap = capacity_value(&gen);
        assert_eq!(cap.value(), None);
        assert!(cap.upper() >= 1.0);
        assert_eq!(cap.lower(), 0.5);
    }
}

mod concentration {
    use permchan_core::bounds::*;
    use permchan_core::math::binomial;
    use permchan_core::ntype::{enumerate_ntypes, multinomial_log_prob};
    use permchan_core::Error;
    use permchan_core::NTypeVector;

    #[test]
    fn alpha_constant_matches_calibration() {
        assert!((calibrate_alpha(1000) - PETROV_ALPHA).abs() < 1e-15);
        assert!(PETROV_ALPHA < 1.0 / core::f64::consts::PI.sqrt());
        // the n ≤ 30 family alone needs a smaller constant
        assert!(calibrate_alpha(30) <= PETROV_ALPHA);
    }

    #[test]
    fn petrov_examples() {
        assert_eq!(petrov_bound(&[0.0, 1.0, 1.0], 0.5), f64::INFINITY);
        let b = petrov_bound(&[0.1, 0.9, 0.5], 0.5);
        assert!((b - 0.5 / 0.7f64.sqrt()).abs() < 1e-15);
        for n in 1..=30u64 {
            let mass = binomial(n, n / 2) as f64 / 2f64.powi(n as i32);
            assert!(mass <= petrov_bound(&vec![0.5; n as usize], PETROV_ALPHA) + 1e-15);
        }
    }

    #[test]
    fn balls_in_bins_examples() {
        let one = balls_in_bins_bound(&[1.0], &vec![vec![1.0]; 5], PETROV_ALPHA).unwrap();
        assert_eq!(one, 1.0);
        let pi = [0.5, 0.5];
        let b = balls_in_bins_bound(&pi, &vec![pi.to_vec(); 10], PETROV_ALPHA).unwrap();
        let exact = binomial(10, 5) as f64 / 1024.0;
        assert!(exact <= b, "{exact} > {b}");
        assert!((b - PETROV_ALPHA / 5f64.sqrt()).abs() < 1e-15);
        assert!(balls_in_bins_bound(&[0.0, 1.0], &[vec![0.5, 0.5]], PETROV_ALPHA).is_err());
    }

    #[test]
    fn bernstein_examples() {
        let e = core::f64::consts::E;
        let t = bernstein_tail(100.0, 4.0, e).unwrap();
        assert!((t.bound - 2.0 / e).abs() < 1e-15);
        assert_eq!(t.floor, 20.0);
        assert!(matches!(bernstein_tail(1.0, 4.0, e), Err(Error::Precondition(_))));
        assert_eq!(bernstein_gamma(3), 120.0);
    }

    #[test]
    fn stirling_bound_dominates_exact() {
        let t = |c: &[u32]| NTypeVector::new(c.to_vec()).unwrap();
        assert!((prob_a_stirling_bound(&t(&[7])) - 1.0 / 84.0).abs() < 1e-15);
        for q in 1..=4usize {
            for n in 1..=14u32 {
                for ty in enumerate_ntypes(n, q).unwrap() {
                    let exact = -multinomial_log_prob(&ty, &ty.frequencies()).unwrap().ln();
                    assert!(prob_a_stirling_bound(&ty) >= exact, "{ty:?}");
                }
            }
        }
    }

    #[test]
    fn single_correction_form_fails_on_small_types() {
        let t = |c: &[u32]| NTypeVector::new(c.to_vec()).unwrap();
        for c in [[1u32, 1], [4, 4]] {
            let ty = t(&c);
            let exact = -multinomial_log_prob(&ty, &ty.frequencies()).unwrap().ln();
            assert!(prob_a_stirling_bound_single_correction(&ty) < exact);
            assert!(prob_a_stirling_bound(&ty) >= exact);
        }
    }
}
