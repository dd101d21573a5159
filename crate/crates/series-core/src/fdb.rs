//! Faà di Bruno partitions and the polynomials `P^k`, `P̃^k`, `P̂^k`.
//!
//! For `k ≥ 1`,
//!
//! ```text
//! P^k[w; z] = Σ  k! / (r₁!⋯r_k!) · w_r · (z₁/1!)^{r₁} ⋯ (z_k/k!)^{r_k}
//! ```
//!
//! summed over `r₁ + 2r₂ + ⋯ + k r_k = k`, with `r = r₁ + ⋯ + r_k`.
//! With `w_r = h^{(r)}(f(0))` and `z_s = f^{(s)}(0)` this is the `k`-th
//! derivative of `h ∘ f` at the origin.
//!
//! `P̃^k` drops the single-block term `w₁ z_k`, `P̂^k` drops the all-singleton
//! term `w_k z₁^k`.

use crate::{Complex, Ring, SeriesError};

/// Largest order for which exact `u128` weights are guaranteed.
pub const MAX_ORDER: usize = 30;

/// One multiset `r₁ + 2r₂ + ⋯ + k r_k = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdbPartition {
    pub k: usize,
    /// `mult[s - 1] = r_s`.
    pub mult: Vec<u32>,
    /// Number of blocks `r = Σ r_s`.
    pub r: u32,
    /// `k! / (r₁!⋯r_k! · (1!)^{r₁}⋯(k!)^{r_k})`, the number of set partitions of
    /// a `k`-set with this block-size profile.
    pub weight: u128,
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `k` in a fixed deterministic order (by `r_k`, then
/// `r_{k-1}`, … descending from the largest part).
pub fn enumerate_partitions(k: usize) -> Result<Vec<FdbPartition>, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    if k > MAX_ORDER {
        return Err(SeriesError::OrderTooLarge(k));
    }
    let mut out = Vec::new();
    let mut mult = vec![0u32; k];
    fill(k, k, &mut mult, &mut out);
    Ok(out)
}

fn fill(k: usize, s: usize, mult: &mut Vec<u32>, out: &mut Vec<FdbPartition>) {
    let used: usize = mult.iter().enumerate().map(|(i, r)| (i + 1) * *r as usize).sum();
    let rest = k - used;
    if s == 1 {
        mult[0] = rest as u32;
        out.push(make_partition(k, mult));
        mult[0] = 0;
        return;
    }
    for r in (0..=rest / s).rev() {
        mult[s - 1] = r as u32;
        fill(k, s - 1, mult, out);
    }
    mult[s - 1] = 0;
}

fn make_partition(k: usize, mult: &[u32]) -> FdbPartition {
    let mut denom: u128 = 1;
    for (i, &r) in mult.iter().enumerate() {
        let s = i + 1;
        denom *= factorial_u128(r as usize);
        denom *= factorial_u128(s).pow(r);
    }
    let weight = factorial_u128(k) / denom;
    FdbPartition { k, mult: mult.to_vec(), r: mult.iter().sum(), weight }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Full,
    Tilde,
    Hat,
}

fn check_lengths<R>(k: usize, w: &[R], z: &[R]) -> Result<(), SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroOrder);
    }
    if w.len() != k {
        return Err(SeriesError::LengthMismatch { expected: k, got: w.len() });
    }
    if z.len() != k {
        return Err(SeriesError::LengthMismatch { expected: k, got: z.len() });
    }
    Ok(())
}

/// Evaluate over an already enumerated partition list.
fn eval<R: Ring>(parts: &[FdbPartition], variant: Variant, w: &[R], z: &[R]) -> R {
    let k = z.len();
    // zpow[s-1][e] = z_s^e for e ≤ k / s.
    let mut zpow: Vec<Vec<R>> = Vec::with_capacity(k);
    for (i, zs) in z.iter().enumerate() {
        let emax = k / (i + 1);
        let mut row = Vec::with_capacity(emax + 1);
        // Slot 0 is never read. Starting the products from z_s itself keeps
        // a truncated unit from capping the precision of Laurent coefficients.
        row.push(zs.one_like());
        if emax >= 1 {
            row.push(zs.clone());
        }
        for e in 2..=emax {
            let next = row[e - 1].mul(zs);
            row.push(next);
        }
        zpow.push(row);
    }
    let mut acc = w[0].zero_like();
    for part in parts {
        if variant == Variant::Tilde && part.r == 1 {
            continue;
        }
        if variant == Variant::Hat && part.r as usize == k {
            continue;
        }
        let wr = &w[part.r as usize - 1];
        if wr.is_exact_zero() {
            continue;
        }
        let mut term = wr.scale_real(part.weight as f64);
        for (i, &r) in part.mult.iter().enumerate() {
            if r > 0 {
                term = term.mul(&zpow[i][r as usize]);
            }
        }
        acc.add_assign(&term);
    }
    acc
}

/// `P^k[w_s; z_s]`; `w` and `z` hold `w_1..w_k` and `z_1..z_k`.
pub fn fdb_p<R: Ring>(k: usize, w: &[R], z: &[R]) -> Result<R, SeriesError> {
    check_lengths(k, w, z)?;
    Ok(eval(&enumerate_partitions(k)?, Variant::Full, w, z))
}

/// `P̃^k = P^k − w₁ z_k`.
pub fn fdb_ptilde<R: Ring>(k: usize, w: &[R], z: &[R]) -> Result<R, SeriesError> {
    check_lengths(k, w, z)?;
    Ok(eval(&enumerate_partitions(k)?, Variant::Tilde, w, z))
}

/// `P̂^k = P^k − w_k z₁^k`.
pub fn fdb_phat<R: Ring>(k: usize, w: &[R], z: &[R]) -> Result<R, SeriesError> {
    check_lengths(k, w, z)?;
    Ok(eval(&enumerate_partitions(k)?, Variant::Hat, w, z))
}

/// `r!` as a float, used to convert Taylor coefficients to derivatives.
pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Scale Taylor coefficients `c_1..c_k` to derivatives `1!c_1..k!c_k`.
pub(crate) fn to_derivatives<R: Ring>(c: &[R]) -> Vec<R> {
    c.iter()
        .enumerate()
        .map(|(i, x)| x.scale(Complex::new(factorial_f64(i + 1), 0.0)))
        .collect()
}
