mod simplex {
    use permchan_core::covering::*;
    use permchan_core::math::sqrt;
    use permchan_core::ntype::Compositions;
    use proptest::prelude::*;

    #[test]
    fn two_symbol_centers_follow_scalar_grid() {
        let net = simplex_net(2, 0.5).unwrap();
        let grid = scalar_net(0.5 / 18.0).unwrap().points;
        assert_eq!(net.len(), grid.len());
        for (c, l) in net.centers.iter().zip(&grid) {
            assert_eq!(c[0], *l);
            assert_eq!(c[1], 1.0 - l);
        }
        assert!(simplex_net(2, 1.0).unwrap().len() <= 7);
    }

    #[test]
    fn size_bound_two_symbols() {
        for i in 1..=400 {
            let eps = i as f64 / 400.0;
            let n = simplex_net(2, eps).unwrap().len() as f64;
            assert!(n <= 7.0 / sqrt(eps), "eps {eps}: {n}");
        }
    }

    #[test]
    fn radius_examples() {
        let half = SimplexNet::from_centers(2, 1.0, std::vec![std::vec![0.5, 0.5]]).unwrap();
        assert!((covering_radius(&half, 2).unwrap() - 2f64.ln()).abs() < 1e-15);
        let lattice: Vec<Vec<f64>> =
            Compositions::new(6, 3).map(|t| t.iter().map(|&c| c as f64 / 6.0).collect()).collect();
        let full = SimplexNet::from_centers(3, 1.0, lattice).unwrap();
        assert_eq!(covering_radius(&full, 6).unwrap(), 0.0);
        assert!(covering_radius(&simplex_net(2, 0.25).unwrap(), 1000).unwrap() <= 0.25);
        assert!(covering_radius(&simplex_net(3, 0.5).unwrap(), 200).unwrap() <= 0.5);
    }

    #[test]
    fn dynamic_program_matches_exhaustive_search() {
        for (k, eps, m) in [(2, 0.3, 40), (3, 0.5, 30), (3, 1.0, 25), (4, 1.0, 12)] {
            let net = simplex_net_with_gamma(k, eps, 6.0).unwrap();
            let dp = covering_radius(&net, m).unwrap();
            let brute = covering_radius_brute(&net.centers, k, m).unwrap();
            assert!((dp - brute).abs() < 1e-12, "k={k} eps={eps}: {dp} vs {brute}");
        }
    }

    #[test]
    fn last_coordinates_come_from_the_lift_grid() {
        for k in 3..=4 {
            let eps = 0.25;
            let net = simplex_net(k, eps).unwrap();
            let grid = scalar_net(eps / (18.0 * k as f64)).unwrap().points;
            for c in &net.centers {
                let last = c[k - 1];
                assert!(grid.iter().any(|g| (g - last).abs() < 1e-15));
                assert!(c.iter().all(|x| *x > 0.0));
                assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(simplex_net(3, 0.1).unwrap(), simplex_net(3, 0.1).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(simplex_net(1, 0.5).is_err());
        assert!(simplex_net(2, 0.0).is_err());
        assert!(simplex_net(2, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn binary_divergence_is_kl(x in 0.0f64..=1.0, l in 0.001f64..0.999) {
            let d = binary_divergence(x, l);
            let kl = permchan_core::kl_divergence(&[x, 1.0 - x], &[l, 1.0 - l]).unwrap();
            prop_assert!((d - kl).abs() < 1e-12);
        }
    }
}

mod scalar {
    use permchan_core::covering::*;

    #[test]
    fn examples() {
        assert_eq!(scalar_net(1.0).unwrap().points, [0.5]);
        assert_eq!(scalar_net(0.125).unwrap().points, [0.125, 0.5, 0.875]);
        let p = scalar_net(0.02).unwrap().points;
        let want = [0.02, 0.08, 0.18, 0.32, 0.5, 0.68, 0.82, 0.92, 0.98];
        assert_eq!(p.len(), want.len());
        for (a, b) in p.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(scalar_net(0.0).is_err());
        assert!(scalar_net(-1.0).is_err());
    }

    #[test]
    fn sorted_and_symmetric() {
        for eps in [0.3, 0.01, 0.001, 1e-5] {
            let p = scalar_net(eps).unwrap().points;
            assert!(p.windows(2).all(|w| w[0] < w[1]));
            for (a, b) in p.iter().zip(p.iter().rev()) {
                assert!((a + b - 1.0).abs() < 1e-15);
            }
            assert!(p.iter().all(|x| *x > 0.0 && *x < 1.0));
        }
    }
}

mod subspace {
    use permchan_core::covering::simplex_net;
    use permchan_core::covering::*;
    use permchan_core::math::binomial;
    use permchan_core::ChannelModel;

    fn ch(rows: &[&[f64]]) -> ChannelModel {
        ChannelModel::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identity_with_unit_gamma_is_single_center() {
        let id = ch(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let net = subspace_net_with_gamma(&id, 1.0, 1.0).unwrap();
        assert_eq!(net.centers, vec![vec![0.5, 0.5]]);
    }

    #[test]
    fn rank_one_channel_collapses_to_its_row() {
        let r = ch(&[&[0.3, 0.7], &[0.3, 0.7], &[0.3, 0.7]]);
        for eps in [1.0, 0.1, 0.001] {
            assert_eq!(subspace_net(&r, eps).unwrap().centers, vec![vec![0.3, 0.7]]);
        }
    }

    #[test]
    fn size_bound_and_hull_membership() {
        let c = ch(&[&[0.6, 0.2, 0.2], &[0.2, 0.6, 0.2], &[0.4, 0.4, 0.2]]);
        assert_eq!(c.rank(), 2);
        let eps = 0.1;
        let net = subspace_net(&c, eps).unwrap();
        let bound = binomial(3, 2) as usize * simplex_net(2, eps).unwrap().len();
        assert!(net.len() <= bound);
        for center in &net.centers {
            assert!(in_hull(center, c.rows(), 1e-9));
        }
        assert_eq!(net.corners.len(), net.len());
    }

    #[test]
    fn radius_over_the_image() {
        let c = ch(&[&[0.8, 0.2], &[0.3, 0.7]]);
        let net = net_for_n(&c, 100).unwrap();
        assert!(subspace_covering_radius(&net, &c, 10_000) <= 0.01);
    }
}
