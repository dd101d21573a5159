use serde::{Deserialize, Serialize};

use series_core::Complex;

use crate::UFunctionError;

/// The `n+1` singular points `p` and `m` tangency points `q` on the divisor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedPoints {
    pub p: Vec<Complex>,
    pub q: Vec<Complex>,
}

impl MarkedPoints {
    /// Default minimum separation between any two marked points.
    pub const DEFAULT_MIN_SEP: f64 = 1e-6;

    pub fn new(p: Vec<Complex>, q: Vec<Complex>, min_sep: f64) -> Result<Self, UFunctionError> {
        let out = Self { p, q };
        let all: Vec<(String, Complex)> = out.labelled();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let dist = (all[i].1 - all[j].1).norm();
                if dist < min_sep {
                    return Err(UFunctionError::NearCoincidentPoints {
                        a: all[i].0.clone(),
                        b: all[j].0.clone(),
                        dist,
                        min_sep,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `p₁..p_{n+1}, q₁..q_m`, the fixed summation order.
    pub fn all(&self) -> Vec<Complex> {
        self.p.iter().chain(self.q.iter()).copied().collect()
    }

    fn labelled(&self) -> Vec<(String, Complex)> {
        let mut v: Vec<(String, Complex)> =
            self.p.iter().enumerate().map(|(i, c)| (format!("p{}", i + 1), *c)).collect();
        v.extend(self.q.iter().enumerate().map(|(j, c)| (format!("q{}", j + 1), *c)));
        v
    }

    pub fn len(&self) -> usize {
        self.p.len() + self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Smallest pairwise distance (infinity for fewer than two points).
    pub fn min_separation(&self) -> f64 {
        let all = self.all();
        let mut best = f64::INFINITY;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                best = best.min((all[i] - all[j]).norm());
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coincident_points() {
        let p = vec![Complex::new(0.0, 0.0)];
        let q = vec![Complex::new(1e-9, 0.0)];
        let err = MarkedPoints::new(p, q, MarkedPoints::DEFAULT_MIN_SEP).unwrap_err();
        assert!(matches!(err, UFunctionError::NearCoincidentPoints { .. }));
    }

    #[test]
    fn order_is_p_then_q() {
        let mp = MarkedPoints::new(
            vec![Complex::new(1.0, 0.0)],
            vec![Complex::new(2.0, 0.0), Complex::new(3.0, 0.0)],
            1e-6,
        )
        .unwrap();
        assert_eq!(mp.all().iter().map(|c| c.re).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
        assert!((mp.min_separation() - 1.0).abs() < 1e-15);
    }
}
