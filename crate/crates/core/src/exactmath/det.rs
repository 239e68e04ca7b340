//! Determinants of square matrices with polynomial entries.

use super::poly::MultiPoly;
use super::MathError;

/// Determinant by fraction-free Bareiss elimination; every division is exact.
pub fn poly_matrix_det(m: &[Vec<MultiPoly>], num_vars: usize) -> Result<MultiPoly, MathError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(MathError::NotSquare);
    }
    if n == 0 {
        return Ok(MultiPoly::one(num_vars));
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut prev = MultiPoly::one(num_vars);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(MultiPoly::zero(num_vars));
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or(MathError::InexactDivision)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}
