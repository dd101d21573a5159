use proptest::prelude::*;
use realization::{build_ak, build_ak_tilde, check_genericity, GenericityTolerance};
use series_core::Complex;
use testkit::{random_pair, rng, PairSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_identity_and_diagonal_structure(seed in any::<u64>(), n_p in 1usize..=3, n_q in 0usize..=3, k in 1usize..=10) {
        let fp = random_pair(&mut rng(seed), PairSpec::new(n_p, n_q, 2));
        let a = build_ak(&fp, k);
        let det = a.clone().lu().determinant();
        let tilde = build_ak_tilde(&fp, k).lu().determinant();
        let prod: Complex = fp.singular.iter().map(|sm| 1.0 - sm.lambda * k as f64).product();
        prop_assert!((det - tilde * prod).norm() <= 1e-9 * det.norm().max(1e-300));
        let d = a - build_ak(&fp, 1);
        for r in 0..d.nrows() {
            for c in 0..d.ncols() {
                prop_assert!(r == c || d[(r, c)] == Complex::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn verdict_means_every_factor_clears_its_tolerance(seed in any::<u64>()) {
        let fp = random_pair(&mut rng(seed), PairSpec::new(2, 3, 4));
        let tol = GenericityTolerance::default();
        let cert = check_genericity(&fp, 4, tol);
        if cert.verdict {
            for f in &cert.factors {
                let bound = match f.factor {
                    realization::Factor::OneMinusKLambda { .. } => tol.factor,
                    _ => tol.hadamard,
                };
                prop_assert!(f.measure >= bound);
            }
        }
    }
}
