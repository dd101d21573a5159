use proptest::prelude::*;
use series_core::{compose, fdb_p, fdb_phat, fdb_ptilde, revert, Complex, XJet};

/// Direct truncated substitution by Horner's scheme, kept local to this test
/// so it shares nothing with the Faà di Bruno path.
fn substitute(outer: &[Complex], inner: &[Complex]) -> Vec<Complex> {
    let n = outer.len().min(inner.len());
    let mul = |a: &[Complex], b: &[Complex]| {
        let mut out = vec![Complex::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    };
    let mut acc = vec![Complex::new(0.0, 0.0); n];
    for c in outer[..n].iter().rev() {
        acc = mul(&acc, &inner[..n]);
        acc[0] += c;
    }
    acc
}

fn complex_strategy() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex::new(a, b))
}

fn small_int() -> impl Strategy<Value = Complex> {
    (-4i32..=4, -4i32..=4).prop_map(|(a, b)| Complex::new(a as f64, b as f64))
}

proptest! {
    #[test]
    fn compose_matches_substitution(
        outer in prop::collection::vec(complex_strategy(), 13),
        inner_tail in prop::collection::vec(complex_strategy(), 12),
    ) {
        let mut inner = vec![Complex::new(0.0, 0.0)];
        inner.extend(inner_tail);
        let got = compose(&XJet::new(outer.clone()), &XJet::new(inner.clone())).unwrap();
        let want = substitute(&outer, &inner);
        let scale = want.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
        for (a, b) in got.coeffs().iter().zip(&want) {
            prop_assert!((a - b).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn revert_is_two_sided_inverse(tail in prop::collection::vec(complex_strategy(), 11)) {
        let mut f = vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)];
        f.extend(tail);
        let f = XJet::new(f);
        let g = revert(&f).unwrap();
        let fg = compose(&f, &g).unwrap();
        let gf = compose(&g, &f).unwrap();
        let id = XJet::identity(12);
        let scale = g.coeffs().iter().map(|c| c.norm()).fold(1.0f64, f64::max);
        for k in 0..=12 {
            prop_assert!((fg.coeff(k) - id.coeff(k)).norm() <= 1e-10 * scale);
            prop_assert!((gf.coeff(k) - id.coeff(k)).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn tilde_and_hat_differ_by_top_terms(
        k in 1usize..8,
        w in prop::collection::vec(small_int(), 8),
        z in prop::collection::vec(small_int(), 8),
    ) {
        let (w, z) = (&w[..k], &z[..k]);
        let p = fdb_p(k, w, z).unwrap();
        let pt = fdb_ptilde(k, w, z).unwrap();
        let ph = fdb_phat(k, w, z).unwrap();
        // Small integer inputs keep every partial sum exact in f64.
        prop_assert_eq!(pt + w[0] * z[k - 1], p);
        prop_assert_eq!(ph + w[k - 1] * z[0].powu(k as u32), p);
    }
}

#[test]
fn bell_numbers_from_exp_of_exp() {
    // e^{e^x - 1} = Σ B_k x^k / k!.
    let n = 10;
    let mut fact = vec![1.0f64];
    for k in 1..=n {
        fact.push(fact[k - 1] * k as f64);
    }
    let exp_jet: Vec<Complex> = (0..=n).map(|k| Complex::new(1.0 / fact[k], 0.0)).collect();
    let mut inner = exp_jet.clone();
    inner[0] = Complex::new(0.0, 0.0);
    let got = compose(&XJet::new(exp_jet), &XJet::new(inner)).unwrap();
    let bell = [1.0, 1.0, 2.0, 5.0, 15.0, 52.0, 203.0, 877.0, 4140.0, 21147.0, 115975.0];
    for k in 0..=n {
        let b = got.coeff(k).re * fact[k];
        assert!((b - bell[k]).abs() < 1e-8 * bell[k], "k={k}: {b}");
    }
}
