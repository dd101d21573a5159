use normal_forms::normal_form;
use proptest::prelude::*;
use testkit::{random_pair, rng, Background, PairSpec};
use u_functions::PoleSum;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn first_order_and_vanishing_at_infinity(seed in any::<u64>(), n_p in 1usize..=3, n_q in 1usize..=3, random_bg in any::<bool>()) {
        let bg = if random_bg { Background::Random } else { Background::Default };
        let fp = random_pair(&mut rng(seed), PairSpec::new(n_p, n_q, 3).with_background(bg));
        let t = normal_form(&fp, 3).unwrap();
        prop_assert_eq!(&t.a_n[0], &PoleSum::constant(series_core::Complex::new(1.0, 0.0)));
        for (j, q) in fp.points.q.iter().enumerate() {
            let got = t.b_n[0].principal_at(*q);
            prop_assert_eq!(got.len(), 1);
            prop_assert!((got[0] + fp.tangency[j].z_coeff(1) / 2.0).norm() < 1e-13);
        }
        for k in 1..3 {
            prop_assert!(t.a_n[k].vanishes_at_infinity());
            prop_assert!(t.b_n[k].vanishes_at_infinity());
        }
        prop_assert!(t.holomorphy_defect.iter().all(|d| *d < 1e-9));
        prop_assert_eq!(&t, &normal_form(&fp, 3).unwrap());
    }
}
