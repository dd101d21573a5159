//! Dense complex linear algebra written out by hand: LU with partial pivoting
//! and least-squares polynomial fitting through modified Gram–Schmidt.

use series_core::Complex;

use crate::OracleError;

/// Row-major square matrix stored as a list of rows.
pub type Matrix = Vec<Vec<Complex>>;

struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
}

fn lu_factor(a: &Matrix) -> Result<Lu, OracleError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(OracleError::NotSquare);
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let (piv, _) = (k..n)
            .map(|r| (r, lu[r][k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv != k {
            lu.swap(piv, k);
            perm.swap(piv, k);
            sign = -sign;
        }
        let d = lu[k][k];
        if d.norm() == 0.0 {
            continue;
        }
        for r in k + 1..n {
            let f = lu[r][k] / d;
            lu[r][k] = f;
            for c in k + 1..n {
                let t = lu[k][c];
                lu[r][c] -= f * t;
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

/// Determinant by LU with partial pivoting.
pub fn lu_det(a: &Matrix) -> Result<Complex, OracleError> {
    if a.is_empty() {
        return Ok(Complex::new(1.0, 0.0));
    }
    let f = lu_factor(a)?;
    let mut d = Complex::new(f.sign, 0.0);
    for (k, row) in f.lu.iter().enumerate() {
        d *= row[k];
    }
    Ok(d)
}

/// Solve `a·x = b`.
pub fn lu_solve(a: &Matrix, b: &[Complex]) -> Result<Vec<Complex>, OracleError> {
    let n = a.len();
    if b.len() != n {
        return Err(OracleError::NotSquare);
    }
    let f = lu_factor(a)?;
    if (0..n).any(|k| f.lu[k][k].norm() == 0.0) {
        return Err(OracleError::Singular);
    }
    let mut y: Vec<Complex> = f.perm.iter().map(|&p| b[p]).collect();
    for r in 0..n {
        for c in 0..r {
            let t = y[c];
            y[r] -= f.lu[r][c] * t;
        }
    }
    for r in (0..n).rev() {
        for c in r + 1..n {
            let t = y[c];
            y[r] -= f.lu[r][c] * t;
        }
        y[r] /= f.lu[r][r];
    }
    Ok(y)
}

/// Least-squares coefficients `c_0..c_deg` of `Σ c_k t^k` through the
/// samples `(ts[i], ys[i])`.
pub fn polyfit(ts: &[Complex], ys: &[Complex], deg: usize) -> Result<Vec<Complex>, OracleError> {
    let rows = ts.len();
    let cols = deg + 1;
    if ys.len() != rows || rows < cols {
        return Err(OracleError::Underdetermined { samples: rows, unknowns: cols });
    }
    // Columns of the Vandermonde design matrix.
    let mut q: Vec<Vec<Complex>> =
        (0..cols).map(|k| ts.iter().map(|t| t.powu(k as u32)).collect()).collect();
    let mut r = vec![vec![Complex::new(0.0, 0.0); cols]; cols];
    for j in 0..cols {
        for i in 0..j {
            let proj: Complex = q[i].iter().zip(&q[j]).map(|(a, b)| a.conj() * b).sum();
            r[i][j] = proj;
            let qi = q[i].clone();
            for (x, y) in q[j].iter_mut().zip(&qi) {
                *x -= proj * y;
            }
        }
        let norm = q[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(OracleError::Singular);
        }
        r[j][j] = Complex::new(norm, 0.0);
        for x in q[j].iter_mut() {
            *x /= norm;
        }
    }
    let qty: Vec<Complex> =
        (0..cols).map(|j| q[j].iter().zip(ys).map(|(a, y)| a.conj() * y).sum()).collect();
    let mut c = vec![Complex::new(0.0, 0.0); cols];
    for j in (0..cols).rev() {
        let mut acc = qty[j];
        for k in j + 1..cols {
            acc -= r[j][k] * c[k];
        }
        c[j] = acc / r[j][j];
    }
    Ok(c)
}
