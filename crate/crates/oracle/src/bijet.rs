//! Bivariate truncated series `Σ c_{i,e} x^i v^e` on a fixed rectangular grid
//! `0 ≤ i ≤ kx`, `vmin ≤ e ≤ vmax`.
//!
//! Products are computed by the schoolbook double loop. Each `x^i` slice
//! carries its own `valid[i]`: the largest `v` exponent up to which that
//! slice is exact. Grid truncation at `vmax` pollutes products whose factors
//! carry poles in `v`, and this bookkeeping tracks how far.

use series_core::Complex;

use crate::univariate::laurent_divide;
use crate::OracleError;

const ZERO: Complex = Complex { re: 0.0, im: 0.0 };
const EXACT: i32 = 1 << 28;

#[derive(Debug, Clone, PartialEq)]
pub struct BiJet {
    kx: usize,
    vmin: i32,
    vmax: i32,
    valid: Vec<i32>,
    c: Vec<Complex>,
}

impl BiJet {
    pub fn zero(kx: usize, vmin: i32, vmax: i32) -> Self {
        let w = (vmax - vmin + 1) as usize;
        Self { kx, vmin, vmax, valid: vec![vmax; kx + 1], c: vec![ZERO; (kx + 1) * w] }
    }

    fn width(&self) -> usize {
        (self.vmax - self.vmin + 1) as usize
    }

    fn idx(&self, i: usize, e: i32) -> usize {
        i * self.width() + (e - self.vmin) as usize
    }

    pub fn kx(&self) -> usize {
        self.kx
    }
    pub fn vmin(&self) -> i32 {
        self.vmin
    }
    pub fn vmax(&self) -> i32 {
        self.vmax
    }

    /// Largest `v` exponent up to which every slice is exact.
    pub fn valid(&self) -> i32 {
        self.valid.iter().copied().min().unwrap_or(self.vmax).min(self.vmax)
    }

    /// Largest `v` exponent up to which the `x^i` slice is exact.
    pub fn valid_at(&self, i: usize) -> i32 {
        self.valid[i].min(self.vmax)
    }

    pub fn get(&self, i: usize, e: i32) -> Complex {
        if i > self.kx || e < self.vmin || e > self.vmax {
            return ZERO;
        }
        self.c[self.idx(i, e)]
    }

    pub fn set(&mut self, i: usize, e: i32, val: Complex) -> Result<(), OracleError> {
        if i > self.kx || e < self.vmin || e > self.vmax {
            return Err(OracleError::GridOverflow { i, e });
        }
        let k = self.idx(i, e);
        self.c[k] = val;
        Ok(())
    }

    pub fn add_at(&mut self, i: usize, e: i32, val: Complex) -> Result<(), OracleError> {
        let cur = self.get(i, e);
        self.set(i, e, cur + val)
    }

    /// Mark coefficients above `valid` as unreliable in every slice.
    pub fn cap_valid(&mut self, valid: i32) {
        for v in self.valid.iter_mut() {
            *v = (*v).min(valid);
        }
    }

    /// Declare every coefficient beyond the grid to be zero. Only meaningful
    /// for polynomial data that fits the grid.
    pub fn mark_exact(mut self) -> Self {
        self.valid.iter_mut().for_each(|v| *v = EXACT);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.valid.iter().all(|v| *v >= EXACT)
    }

    /// The series `c·v^e` (no `x` dependence).
    pub fn v_monomial(kx: usize, vmin: i32, vmax: i32, c: Complex, e: i32) -> Result<Self, OracleError> {
        let mut out = Self::zero(kx, vmin, vmax);
        out.set(0, e, c)?;
        Ok(out)
    }

    /// The series `Σ_i coeffs[i] x^i` (no `v` dependence).
    pub fn x_series(kx: usize, vmin: i32, vmax: i32, coeffs: &[Complex]) -> Self {
        let mut out = Self::zero(kx, vmin, vmax);
        for (i, c) in coeffs.iter().enumerate().take(kx + 1) {
            out.set(i, 0, *c).expect("exponent 0 is inside every grid");
        }
        out
    }

    /// Univariate Laurent data in `v` placed at `x^i`.
    pub fn from_v_laurent(
        kx: usize,
        vmin: i32,
        vmax: i32,
        i: usize,
        min_exp: i32,
        coeffs: &[Complex],
    ) -> Result<Self, OracleError> {
        let mut out = Self::zero(kx, vmin, vmax);
        for (k, c) in coeffs.iter().enumerate() {
            let e = min_exp + k as i32;
            if e > vmax {
                break;
            }
            if *c != ZERO {
                out.set(i, e, *c)?;
            }
        }
        Ok(out)
    }

    /// Lowest nonzero exponent in slice `i`, or the first unknown exponent if
    /// the slice is zero as far as it is known.
    fn slice_low(&self, i: usize) -> i32 {
        (self.vmin..=self.vmax.min(self.valid[i]))
            .find(|&e| self.get(i, e) != ZERO)
            .unwrap_or_else(|| self.valid[i].saturating_add(1).min(EXACT))
    }

    /// Lowest `v` exponent carrying a nonzero coefficient in any slice.
    pub fn low(&self) -> i32 {
        (0..=self.kx).map(|i| self.slice_low(i)).min().unwrap_or(self.vmax).min(self.vmax)
    }

    fn same_grid(&self, other: &Self) {
        assert!(
            self.kx == other.kx && self.vmin == other.vmin && self.vmax == other.vmax,
            "bijet grids differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_grid(other);
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(&other.c) {
            *a += b;
        }
        for (v, w) in out.valid.iter_mut().zip(&other.valid) {
            *v = (*v).min(*w);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut out = self.clone();
        for a in out.c.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Schoolbook product on the grid.
    pub fn mul(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_grid(other);
        let mut out = Self::zero(self.kx, self.vmin, self.vmax);
        for i in 0..=self.kx {
            for e in self.vmin..=self.vmax {
                let a = self.get(i, e);
                if a == ZERO {
                    continue;
                }
                for j in 0..=self.kx - i {
                    for f in other.vmin..=other.vmax {
                        let b = other.get(j, f);
                        if b == ZERO {
                            continue;
                        }
                        let g = e + f;
                        if g > self.vmax {
                            break;
                        }
                        if g < self.vmin {
                            return Err(OracleError::GridOverflow { i: i + j, e: g });
                        }
                        out.add_at(i + j, g, a * b)?;
                    }
                }
            }
        }
        let lows_a: Vec<i32> = (0..=self.kx).map(|i| self.slice_low(i)).collect();
        let lows_b: Vec<i32> = (0..=other.kx).map(|j| other.slice_low(j)).collect();
        for k in 0..=self.kx {
            let mut v = self.vmax;
            for i in 0..=k {
                let j = k - i;
                if self.valid[i] < EXACT && lows_b[j] < EXACT {
                    v = v.min(self.valid[i] + lows_b[j]);
                }
                if other.valid[j] < EXACT && lows_a[i] < EXACT {
                    v = v.min(other.valid[j] + lows_a[i]);
                }
            }
            out.valid[k] = v;
        }
        Ok(out)
    }

    pub fn powi(&self, n: usize) -> Result<Self, OracleError> {
        let mut out = Self::v_monomial(self.kx, self.vmin, self.vmax, Complex::new(1.0, 0.0), 0)?.mark_exact();
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of a series whose `x^0` slice is an invertible Laurent series
    /// in `v`: `1/(f₀ + R) = f₀^{−1} Σ_n (−R f₀^{−1})^n`.
    pub fn inv(&self) -> Result<Self, OracleError> {
        let fvalid = self.valid[0].min(self.vmax);
        let low0 = (self.vmin..=fvalid)
            .find(|&e| self.get(0, e) != ZERO)
            .ok_or(OracleError::NotInvertible)?;
        let f0: Vec<Complex> = (low0..=fvalid).map(|e| self.get(0, e)).collect();
        let qmin = -low0;
        let n_terms = (self.vmax - qmin + 1).max(1) as usize;
        let (q, qmin) = laurent_divide(&[Complex::new(1.0, 0.0)], 0, &f0, low0, n_terms)?;
        let mut inv0 = Self::from_v_laurent(self.kx, self.vmin, self.vmax, 0, qmin, &q)?.mark_exact();
        inv0.valid[0] = if self.valid[0] >= EXACT { self.vmax } else { (qmin + fvalid - low0).min(self.vmax) };
        let mut rest = self.clone();
        for e in self.vmin..=self.vmax {
            rest.set(0, e, ZERO)?;
        }
        rest.valid[0] = EXACT;
        let ratio = rest.mul(&inv0)?.scale(Complex::new(-1.0, 0.0));
        let mut term = inv0.clone();
        let mut acc = inv0;
        for _ in 0..self.kx {
            term = term.mul(&ratio)?;
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Plain substitution `outer(X, V)` with `X = inner_x`, `V = inner_v`.
    ///
    /// `outer` is read as `Σ o_{i,e} X^i V^e`; negative `e` use powers of the
    /// inverse of `inner_v`. `inner_x` must have no `x^0` part and `inner_v`
    /// must be `v` plus terms of positive `x` order.
    pub fn bicompose(outer: &Self, inner_x: &Self, inner_v: &Self) -> Result<Self, OracleError> {
        outer.same_grid(inner_x);
        outer.same_grid(inner_v);
        for e in inner_x.vmin..=inner_x.vmax {
            if inner_x.get(0, e) != ZERO {
                return Err(OracleError::InnerNotSmall);
            }
        }
        let (kx, vmin, vmax) = (outer.kx, outer.vmin, outer.vmax);
        let unit = Complex::new(1.0, 0.0);
        let one = Self::v_monomial(kx, vmin, vmax, unit, 0)?.mark_exact();
        let vid = Self::v_monomial(kx, vmin, vmax, unit, 1)?.mark_exact();
        let delta = inner_v.sub(&vid);
        for e in vmin..=vmax {
            if delta.get(0, e) != ZERO {
                return Err(OracleError::InnerNotSmall);
            }
        }
        let mut xp = vec![one.clone()];
        for i in 1..=kx {
            xp.push(xp[i - 1].mul(inner_x)?);
        }
        let (emin, emax) = outer_exponent_range(outer);
        let mut acc = Self::zero(kx, vmin, vmax).mark_exact();
        let vinv = if emin < 0 { Some(inner_v.inv()?) } else { None };
        let mut vpow = one.clone();
        let mut vneg = one.clone();
        for e in 0..=emax.max(-emin) {
            if e > 0 && e <= emax {
                vpow = vpow.mul(inner_v)?;
            }
            if e > 0 && e <= -emin {
                vneg = vneg.mul(vinv.as_ref().expect("negative exponents present"))?;
            }
            for (sign, pow) in [(1, &vpow), (-1, &vneg)] {
                let ee = sign * e;
                if (sign == -1 && e == 0) || ee < emin || ee > emax {
                    continue;
                }
                let mut slice = Self::zero(kx, vmin, vmax).mark_exact();
                let mut any = false;
                for (i, x) in xp.iter().enumerate() {
                    let o = outer.get(i, ee);
                    if o != ZERO {
                        slice = slice.add(&x.scale(o));
                        any = true;
                    }
                }
                if any {
                    acc = acc.add(&slice.mul(pow)?);
                }
            }
        }
        if !outer.is_exact() {
            // Unknown outer terms o_{i,e}, e > valid[i], contribute X^i V^e.
            // Slice b of V^e starts no lower than e + d[b] with
            // d[b] = min_{j ≤ b} (low of slice b of δ^j) − j.
            let mut d = vec![0i32; kx + 1];
            let mut dp = one.clone();
            for j in 1..=kx {
                dp = dp.mul(&delta)?;
                for (b, db) in d.iter_mut().enumerate() {
                    let l = dp.slice_low(b);
                    if l < EXACT {
                        *db = (*db).min(l - j as i32);
                    }
                }
            }
            for (i, x) in xp.iter().enumerate() {
                if outer.valid[i] >= EXACT {
                    continue;
                }
                let e0 = outer.valid[i] + 1;
                for a in 0..=kx {
                    let la = x.slice_low(a);
                    if la >= EXACT {
                        continue;
                    }
                    for b in 0..=kx - a {
                        let k = a + b;
                        acc.valid[k] = acc.valid[k].min(la + e0 + d[b] - 1);
                    }
                }
            }
        }
        acc.cap_valid(vmax);
        Ok(acc)
    }
}

fn outer_exponent_range(outer: &BiJet) -> (i32, i32) {
    let mut emin = i32::MAX;
    let mut emax = i32::MIN;
    for i in 0..=outer.kx {
        for e in outer.vmin..=outer.vmax {
            if outer.get(i, e) != ZERO {
                emin = emin.min(e);
                emax = emax.max(e);
            }
        }
    }
    if emin > emax {
        (0, 0)
    } else {
        (emin, emax)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn v_shift_by_x() {
        // outer = V, inner_v = v + x  →  v + x
        let outer = BiJet::v_monomial(3, -4, 8, c(1.0), 1).unwrap();
        let ix = BiJet::x_series(3, -4, 8, &[c(0.0), c(1.0)]);
        let iv = BiJet::v_monomial(3, -4, 8, c(1.0), 1).unwrap().add(&ix);
        let got = BiJet::bicompose(&outer, &ix, &iv).unwrap();
        assert_eq!(got.get(0, 1), c(1.0));
        assert_eq!(got.get(1, 0), c(1.0));
    }

    #[test]
    fn inverse_of_v_plus_x() {
        let ix = BiJet::x_series(4, -6, 10, &[c(0.0), c(1.0)]).mark_exact();
        let iv = BiJet::v_monomial(4, -6, 10, c(1.0), 1).unwrap().mark_exact().add(&ix);
        let inv = iv.inv().unwrap();
        // 1/(v + x) = Σ (−x)^n v^{−n−1}
        for n in 0..=4 {
            let want = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((inv.get(n, -(n as i32) - 1) - want).norm() < 1e-14);
        }
        let one = iv.mul(&inv).unwrap();
        assert!((one.get(0, 0) - 1.0).norm() < 1e-14);
        for i in 1..=4 {
            for e in -6..=0 {
                assert!(one.get(i, e).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn validity_is_tracked_per_slice() {
        // (1/v)·(truncated data) loses one exponent in that slice only.
        let a = BiJet::v_monomial(2, -4, 6, c(1.0), -1).unwrap().mark_exact();
        let mut b = BiJet::x_series(2, -4, 6, &[c(1.0), c(0.0), c(1.0)]);
        b.valid = vec![6, EXACT, 3];
        let p = a.mul(&b).unwrap();
        assert_eq!(p.valid_at(0), 5);
        assert_eq!(p.valid_at(1), 6);
        assert_eq!(p.valid_at(2), 2);
    }

    #[test]
    fn overflow_is_reported() {
        let a = BiJet::v_monomial(1, -2, 4, c(1.0), -2).unwrap();
        assert!(matches!(a.mul(&a), Err(OracleError::GridOverflow { .. })));
    }
}
