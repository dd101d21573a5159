//! Seeded random foliation-pair data for tests.
//!
//! Jets are drawn with geometric decay `|c_r| ≤ 2^{1−r}`, so every germ is
//! analytic on a disc of radius 2 around its point. Marked points are kept
//! at least `MIN_GAP` apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use local_models::{involution_from_conjugator, BackgroundData, FoliationPairData, SingularModel, TangencyModel};
use series_core::{Complex, XJet};
use u_functions::MarkedPoints;

pub use rand_chacha::ChaCha8Rng as Rng8;

pub const MIN_GAP: f64 = 0.6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the square `[−scale, scale]²`.
pub fn rc(rng: &mut ChaCha8Rng, scale: f64) -> Complex {
    Complex::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Modulus in `[lo, hi)`, uniform argument.
pub fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex {
    Complex::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `Σ_{r=1}^{order} c_r x^r` with `c_1 = first` and `c_r ~ U(box)·2^{1−r}`.
pub fn random_jet(rng: &mut ChaCha8Rng, order: usize, first: Complex) -> XJet<Complex> {
    let mut c = vec![Complex::new(0.0, 0.0); order + 1];
    if order >= 1 {
        c[1] = first;
    }
    for (r, slot) in c.iter_mut().enumerate().skip(2) {
        *slot = rc(rng, 1.0) * 0.5f64.powi(r as i32 - 1);
    }
    XJet::new(c)
}

/// Taylor coefficients `[c_0, …, c_len−1]` with `c_0 = first`, decaying.
pub fn random_taylor(rng: &mut ChaCha8Rng, len: usize, first: Complex) -> XJet<Complex> {
    let mut c: Vec<Complex> = (0..len).map(|e| rc(rng, 1.0) * 0.5f64.powi(e as i32)).collect();
    c[0] = first;
    XJet::new(c)
}

/// `n` points in the disc of radius 2, pairwise at least `MIN_GAP` apart.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex> {
    let mut out: Vec<Complex> = Vec::with_capacity(n);
    while out.len() < n {
        let c = rc(rng, 2.0);
        if c.norm() <= 2.0 && out.iter().all(|o| (o - c).norm() >= MIN_GAP) {
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Background {
    Default,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involutions {
    /// `−v/(1 + τv)`, exact to the order used.
    Mobius,
    /// `h^{−1}∘(−h)` for a random tangent-to-identity `h`.
    Conjugated,
}

#[derive(Debug, Clone, Copy)]
pub struct PairSpec {
    pub n_p: usize,
    pub n_q: usize,
    pub k0: usize,
    pub background: Background,
    pub involutions: Involutions,
}

impl PairSpec {
    pub fn new(n_p: usize, n_q: usize, k0: usize) -> Self {
        Self { n_p, n_q, k0, background: Background::Default, involutions: Involutions::Mobius }
    }

    pub fn with_background(mut self, b: Background) -> Self {
        self.background = b;
        self
    }

    pub fn with_involutions(mut self, i: Involutions) -> Self {
        self.involutions = i;
        self
    }
}

/// Involution jet order used for random tangency models.
pub const INVOLUTION_ORDER: usize = 24;

pub fn random_background(rng: &mut ChaCha8Rng, n_p: usize, n_q: usize, k0: usize) -> BackgroundData {
    let one = Complex::new(1.0, 0.0);
    let eps = (0..n_p)
        .map(|_| {
            (1..=k0)
                .map(|r| {
                    let at_p = if r == 1 { one } else { rc(rng, 0.5) };
                    random_taylor(rng, 5, at_p)
                })
                .collect()
        })
        .collect();
    let sig = (0..n_q)
        .map(|_| {
            (1..=k0)
                .map(|r| {
                    let at_q = match r {
                        1 => one,
                        2 => rc(rng, 0.5),
                        _ => Complex::new(0.0, 0.0),
                    };
                    random_taylor(rng, 5, at_q)
                })
                .collect()
        })
        .collect();
    BackgroundData::new(eps, sig).expect("normalizations hold by construction")
}

/// A random pair with `λ_i` and `τ_j` drawn generically and `|z_{j,1}| ∈ [0.5, 1)`.
pub fn random_pair(rng: &mut ChaCha8Rng, spec: PairSpec) -> FoliationPairData {
    let pts = random_points(rng, spec.n_p + spec.n_q);
    let (p, q) = pts.split_at(spec.n_p);
    let points = MarkedPoints::new(p.to_vec(), q.to_vec(), MarkedPoints::DEFAULT_MIN_SEP).unwrap();
    let singular = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| {
            let lambda = rc(rng, 1.5);
            let s1 = rc(rng, 1.0);
            let s = random_jet(rng, spec.k0, s1);
            SingularModel::new(i, pi, lambda, s).unwrap()
        })
        .collect();
    let tangency = q
        .iter()
        .enumerate()
        .map(|(j, &qj)| {
            let z1 = polar(rng, 0.5, 1.0);
            let z = random_jet(rng, spec.k0, z1);
            match spec.involutions {
                Involutions::Mobius => TangencyModel::mobius(j, qj, polar(rng, 0.5, 1.5), z, INVOLUTION_ORDER).unwrap(),
                Involutions::Conjugated => {
                    let h = random_jet(rng, INVOLUTION_ORDER, Complex::new(1.0, 0.0));
                    let inv = involution_from_conjugator(&h).unwrap();
                    TangencyModel::from_involution(j, qj, inv, z).unwrap()
                }
            }
        })
        .collect();
    let background = match spec.background {
        Background::Default => BackgroundData::default_for(spec.n_p, spec.n_q),
        Background::Random => random_background(rng, spec.n_p, spec.n_q, spec.k0),
    };
    FoliationPairData::new(points, singular, tangency, background, spec.k0).unwrap()
}

/// Copy with `τ_j` replaced; the involution becomes the Möbius one.
pub fn with_tau(fp: &FoliationPairData, j: usize, tau: Complex) -> FoliationPairData {
    let mut out = fp.clone();
    let tm = &fp.tangency[j];
    out.tangency[j] = TangencyModel::mobius(j, tm.q, tau, tm.z.clone(), INVOLUTION_ORDER).unwrap();
    out
}

/// Copy with `λ_i` replaced.
pub fn with_lambda(fp: &FoliationPairData, i: usize, lambda: Complex) -> FoliationPairData {
    let mut out = fp.clone();
    out.singular[i].lambda = lambda;
    out
}
