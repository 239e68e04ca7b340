//! Univariate integer polynomials (characteristic and Poincaré polynomials).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `prod (t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::from_i64(&[-r, 1]))
    }

    /// `prod (1 + b t)`.
    pub fn from_one_plus(bs: &[i64]) -> Self {
        bs.iter().fold(Self::one(), |acc, &b| &acc * &Self::from_i64(&[1, b]))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Coefficients as `i64`, low degree first; `None` on overflow.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Divide by `t - r`; returns the quotient if the remainder is zero.
    fn deflate(&self, r: &BigInt) -> Option<UniPoly> {
        let n = self.coeffs.len();
        if n == 0 {
            return None;
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &carry * r;
            if k == 0 {
                return v.is_zero().then(|| UniPoly::from_coeffs(q));
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// If the polynomial is monic and splits into linear factors over Z,
    /// return its roots in ascending order (with multiplicity).
    pub fn integer_roots(&self) -> Option<Vec<i64>> {
        if self.coeffs.last()? != &BigInt::one() {
            return None;
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        while p.degree()? > 0 {
            let c0 = p.coeff(0);
            let found = if c0.is_zero() {
                Some(BigInt::zero())
            } else {
                divisors(&c0.abs())
                    .into_iter()
                    .flat_map(|d| [d.clone(), -d])
                    .find(|r| p.eval(r).is_zero())
            };
            let r = found?;
            p = p.deflate(&r).expect("root divides");
            roots.push(r.to_i64()?);
        }
        roots.sort_unstable();
        Some(roots)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &(&d * &d) <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl<'a> std::ops::Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_round_trip() {
        let p = UniPoly::from_roots(&[3, 1, 3]);
        assert_eq!(p, UniPoly::from_i64(&[-9, 15, -7, 1]));
        assert_eq!(p.integer_roots(), Some(vec![1, 3, 3]));
        assert_eq!(UniPoly::from_roots(&[0, 0, -2]).integer_roots(), Some(vec![-2, 0, 0]));
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        // (t - 1)(t^2 - 5t + 7)
        let p = &UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[7, -5, 1]);
        assert_eq!(p.integer_roots(), None);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_roots(&[1, 2]).to_string(), "t^2 - 3t + 2");
        assert_eq!(UniPoly::from_one_plus(&[1, 2]).to_string(), "2t^2 + 3t + 1");
    }
}
