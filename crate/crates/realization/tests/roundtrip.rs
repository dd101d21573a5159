use realization::{realize, realize_with_shift, shift_quadratics, RealizationError, RealizeOptions};
use series_core::Complex;
use tangency_curves::forward;
use testkit::{random_pair, rng, with_lambda, Background, Involutions, PairSpec};

fn rel(a: &[Complex], b: &[Complex]) -> f64 {
    let scale = b.iter().map(|c| c.norm()).fold(1.0, f64::max);
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
}

#[test]
fn invariants_are_recovered() {
    let k0 = 5;
    for (seed, bg, inv) in [
        (1, Background::Default, Involutions::Mobius),
        (2, Background::Random, Involutions::Mobius),
        (3, Background::Random, Involutions::Conjugated),
    ] {
        let fp = random_pair(&mut rng(seed), PairSpec::new(3, 2, k0).with_background(bg).with_involutions(inv));
        let curve = forward(&fp, k0).unwrap();
        let out = realize(&fp, &curve, k0, &RealizeOptions::default()).unwrap();
        for (i, sm) in fp.singular.iter().enumerate() {
            assert!(rel(&out.s[i], &sm.s.coeffs()[1..=k0]) < 1e-8, "seed {seed} s_{i}");
        }
        for (j, tm) in fp.tangency.iter().enumerate() {
            assert!(rel(&out.z[j], &tm.z.coeffs()[1..=k0]) < 1e-8, "seed {seed} z_{j}");
        }
        assert!(out.residual < 1e-9, "seed {seed}: {:e}", out.residual);
        let again = forward(&out.install(&fp), k0).unwrap();
        assert!(again.max_deviation(&curve) < 1e-9);
        assert!(out.quadratic_shift.iter().all(|c| c.norm() == 0.0));
    }
}

#[test]
fn template_invariants_are_ignored() {
    let k0 = 4;
    let fp = random_pair(&mut rng(4), PairSpec::new(2, 2, k0));
    let other = random_pair(&mut rng(5), PairSpec::new(2, 2, k0));
    let mut template = fp.clone();
    for (t, o) in template.singular.iter_mut().zip(&other.singular) {
        t.s = o.s.clone();
    }
    let curve = forward(&fp, k0).unwrap();
    let a = realize(&fp, &curve, k0, &RealizeOptions::default()).unwrap();
    let b = realize(&template, &curve, k0, &RealizeOptions::default()).unwrap();
    assert_eq!(a.s, b.s);
    assert_eq!(a.z, b.z);
}

#[test]
fn zero_curve_has_vanishing_first_z() {
    let k0 = 3;
    let fp = random_pair(&mut rng(6), PairSpec::new(2, 2, k0));
    let mut curve = forward(&fp, k0).unwrap();
    for b in curve.branches.iter_mut() {
        b.coeffs.iter_mut().for_each(|c| *c = Complex::new(0.0, 0.0));
    }
    let err = realize(&fp, &curve, k0, &RealizeOptions::default()).unwrap_err();
    assert!(matches!(err, RealizationError::VanishingZ1 { .. }), "{err}");
}

#[test]
fn quadratic_shift_repairs_a_degenerate_curve() {
    let k0 = 3;
    let fp = random_pair(&mut rng(7), PairSpec::new(2, 2, k0));
    let mut curve = forward(&fp, k0).unwrap();
    for b in curve.branches.iter_mut() {
        b.coeffs[0] = Complex::new(0.0, 0.0);
    }
    assert!(realize(&fp, &curve, k0, &RealizeOptions::default()).is_err());
    let out = realize_with_shift(&fp, &curve, k0, &RealizeOptions::default(), 11).unwrap();
    assert!(out.quadratic_shift.iter().any(|c| c.norm() > 0.0));
    let shifted = shift_quadratics(&curve, &fp, &out.quadratic_shift);
    let again = forward(&out.install(&fp), k0).unwrap();
    assert!(again.max_deviation(&shifted) < 1e-9);
    assert!(out.z.iter().all(|z| z[0].norm() > 1e-6));
}

#[test]
fn non_generic_configuration_is_refused() {
    let k0 = 3;
    let fp = with_lambda(&random_pair(&mut rng(8), PairSpec::new(2, 1, k0)), 1, Complex::new(1.0 / 3.0, 0.0));
    let curve = forward(&fp, k0).unwrap();
    match realize(&fp, &curve, k0, &RealizeOptions::default()) {
        Err(RealizationError::NonGeneric { factors, .. }) => assert_eq!(factors, vec!["(1−3λ₂)".to_string()]),
        other => panic!("expected refusal, got {other:?}"),
    }
}

#[test]
fn branch_count_must_match() {
    let k0 = 2;
    let fp = random_pair(&mut rng(9), PairSpec::new(2, 1, k0));
    let mut curve = forward(&fp, k0).unwrap();
    curve.branches.pop();
    assert!(matches!(
        realize(&fp, &curve, k0, &RealizeOptions::default()),
        Err(RealizationError::BranchCount { expected: 3, got: 2 })
    ));
}
