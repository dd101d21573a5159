use proptest::prelude::*;
use series_core::{compose, Complex, XJet};
use tangency_curves::{curve_coeffs, forward, offsets};
use testkit::{random_pair, rng, PairSpec};

fn jet(c: &[(f64, f64)], first: Complex) -> XJet<Complex> {
    let mut v = vec![Complex::new(0.0, 0.0), first];
    v.extend(c.iter().enumerate().map(|(r, (a, b))| Complex::new(*a, *b) * 0.5f64.powi(r as i32 + 1)));
    XJet::new(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The branch `c` satisfies `c∘α = β`.
    #[test]
    fn branch_recomposes_to_beta(
        a in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7),
        b in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7),
        b1 in (-1.0..1.0f64, -1.0..1.0f64),
    ) {
        let alpha = jet(&a, Complex::new(1.0, 0.0));
        let beta = jet(&b, Complex::new(b1.0, b1.1));
        let c = curve_coeffs(&alpha, &beta).unwrap();
        let mut cj = vec![Complex::new(0.0, 0.0)];
        cj.extend(c);
        let back = compose(&XJet::new(cj), &alpha).unwrap();
        for k in 0..=8 {
            prop_assert!((back.coeff(k) - beta.coeff(k)).norm() < 1e-11);
        }
    }

    #[test]
    fn offsets_ignore_the_top_level(seed in any::<u64>()) {
        let fp = random_pair(&mut rng(seed), PairSpec::new(2, 2, 3));
        let zero = vec![Complex::new(0.0, 0.0); 2];
        let other = fp.with_level(3, &zero, &zero);
        prop_assert_eq!(offsets(&fp, 3).unwrap(), offsets(&other, 3).unwrap());
        prop_assert!(offsets(&fp, 1).unwrap().iter().all(|c| c.norm() < 1e-14));
        let curve = forward(&fp, 3).unwrap();
        prop_assert_eq!(curve.branches.len(), 4);
    }
}
