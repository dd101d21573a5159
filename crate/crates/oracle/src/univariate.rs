//! One-variable brute force: Horner substitution, convolution, long division
//! and generalized binomial coefficients.

use series_core::Complex;

use crate::OracleError;

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// Truncated Cauchy product of two coefficient lists, kept to `n` terms.
pub fn convolve(a: &[Complex], b: &[Complex], n: usize) -> Vec<Complex> {
    let mut out = vec![zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Jet of `outer(inner(x))` by Horner's scheme with truncated products.
/// `inner[0]` must be zero for the result to be a faithful jet.
pub fn substitute(outer: &[Complex], inner: &[Complex]) -> Result<Vec<Complex>, OracleError> {
    if inner.first().is_some_and(|c| *c != zero()) {
        return Err(OracleError::InnerNotSmall);
    }
    let n = outer.len().min(inner.len());
    let mut acc = vec![zero(); n];
    for c in outer[..n].iter().rev() {
        acc = convolve(&acc, &inner[..n], n);
        acc[0] += c;
    }
    Ok(acc)
}

/// Laurent quotient `num / den` where `num = Σ num[k] t^{num_min + k}` and
/// likewise for `den`, whose first entry must be nonzero.
///
/// Returns `n_terms` coefficients starting at exponent `num_min − den_min`.
pub fn laurent_divide(
    num: &[Complex],
    num_min: i32,
    den: &[Complex],
    den_min: i32,
    n_terms: usize,
) -> Result<(Vec<Complex>, i32), OracleError> {
    let d0 = *den.first().ok_or(OracleError::NotInvertible)?;
    if d0 == zero() {
        return Err(OracleError::NotInvertible);
    }
    let mut q = Vec::with_capacity(n_terms);
    for k in 0..n_terms {
        let mut acc = num.get(k).copied().unwrap_or_else(zero);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= den[j] * q[k - j];
        }
        q.push(acc / d0);
    }
    Ok((q, num_min - den_min))
}

/// `binom(a, n) = a(a−1)⋯(a−n+1)/n!` for complex `a`.
pub fn binomial(a: Complex, n: usize) -> Complex {
    let mut out = Complex::new(1.0, 0.0);
    for k in 0..n {
        out = out * (a - k as f64) / (k as f64 + 1.0);
    }
    out
}

/// Horner evaluation of a polynomial.
pub fn eval_poly(c: &[Complex], x: Complex) -> Complex {
    c.iter().rev().fold(zero(), |acc, a| acc * x + a)
}

/// Coefficients of the derivative polynomial.
pub fn derive_poly(c: &[Complex]) -> Vec<Complex> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn geometric_series_by_division() {
        let (q, e0) = laurent_divide(&[c(1.0)], 0, &[c(1.0), c(-1.0)], 0, 6).unwrap();
        assert_eq!(e0, 0);
        assert!(q.iter().all(|x| *x == c(1.0)));
    }

    #[test]
    fn division_with_poles() {
        // 1 / (t^2 + t^3) = t^{-2} (1 − t + t^2 − …)
        let (q, e0) = laurent_divide(&[c(1.0)], 0, &[c(1.0), c(1.0)], 2, 4).unwrap();
        assert_eq!(e0, -2);
        assert_eq!(q, vec![c(1.0), c(-1.0), c(1.0), c(-1.0)]);
    }

    #[test]
    fn substitution_of_square() {
        let got = substitute(&[c(0.0), c(0.0), c(1.0), c(0.0), c(0.0)], &[c(0.0), c(1.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(got, vec![c(0.0), c(0.0), c(1.0), c(2.0), c(1.0)]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(c(5.0), 2), c(10.0));
        assert!((binomial(c(0.5), 2) - c(-0.125)).norm() < 1e-15);
        assert_eq!(binomial(c(2.0), 3), c(0.0));
    }
}
