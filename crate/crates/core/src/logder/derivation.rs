use std::fmt;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::{monomials_of_degree, reduce_mod_form, Monomial, MultiPoly, Rational};

use super::LogderError;

/// A homogeneous polynomial vector field `sum p_i d/dx_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self, LogderError> {
        let n = coeffs.len();
        if coeffs.iter().any(|p| p.num_vars() != n) {
            return Err(LogderError::Malformed(
                "every coefficient must live in the ambient ring".into(),
            ));
        }
        let mut deg = None;
        for p in &coeffs {
            if !p.is_homogeneous() {
                return Err(LogderError::Malformed(format!("coefficient {p} is not homogeneous")));
            }
            if let Some(e) = p.degree() {
                if deg.is_some_and(|d| d != e) {
                    return Err(LogderError::Malformed("coefficients of different degrees".into()));
                }
                deg = Some(e);
            }
        }
        Ok(Derivation { coeffs })
    }

    pub(crate) fn from_parts_unchecked(coeffs: Vec<MultiPoly>) -> Self {
        Derivation { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Derivation {
            coeffs: vec![MultiPoly::zero(n); n],
        }
    }

    /// `theta_E = sum x_i d/dx_i`.
    pub fn euler(n: usize) -> Self {
        Derivation {
            coeffs: (0..n).map(|i| MultiPoly::var(n, i)).collect(),
        }
    }

    /// The constant field pointing along `v`.
    pub fn constant(v: &[Rational]) -> Self {
        let n = v.len();
        Derivation {
            coeffs: v.iter().map(|c| MultiPoly::constant(n, c.clone())).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Common degree of the nonzero coefficients; `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.iter().find_map(MultiPoly::degree)
    }

    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let n = self.num_vars();
        let mut out = MultiPoly::zero(n);
        for (i, p) in self.coeffs.iter().enumerate() {
            if !p.is_zero() && f.uses_var(i) {
                out = &out + &(p * &f.derivative(i));
            }
        }
        out
    }

    /// `theta(alpha)` for the linear form with the given coefficients.
    pub fn apply_linear(&self, c: &[Rational]) -> MultiPoly {
        let n = self.num_vars();
        let mut out = MultiPoly::zero(n);
        for (p, ci) in self.coeffs.iter().zip(c) {
            if !ci.is_zero() {
                out = &out + &p.scale(ci);
            }
        }
        out
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p * f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Whether `theta(alpha_H)` lies in `(alpha_H)`.
    pub fn is_tangent_to(&self, h: &Hyperplane) -> bool {
        let img = self.apply_linear(h.coeffs());
        reduce_mod_form(&img, &h.form())
            .expect("hyperplane forms are linear")
            .is_zero()
    }

    /// Membership in `D(A)`, tested hyperplane by hyperplane.
    pub fn is_logarithmic(&self, a: &Arrangement) -> bool {
        a.hyperplanes().iter().all(|h| self.is_tangent_to(h))
    }

    /// Membership in `D(A)` via the defining condition `theta(Q) in Q S`.
    pub fn preserves_defining_poly(&self, a: &Arrangement) -> bool {
        let q = a.defining_poly();
        self.apply(&q).div_exact(&q).is_some()
    }

    /// Coefficients in the monomial basis of degree `d`: block `i` holds `p_i`
    /// in the order of [`monomials_of_degree`].
    pub fn to_vector(&self, d: u32) -> Vec<Rational> {
        let mons = monomials_of_degree(self.num_vars(), d);
        let mut v = Vec::with_capacity(self.num_vars() * mons.len());
        for p in &self.coeffs {
            v.extend(mons.iter().map(|m| p.coeff(m)));
        }
        v
    }

    pub fn from_vector(n: usize, d: u32, v: &[Rational]) -> Derivation {
        let mons = monomials_of_degree(n, d);
        let m = mons.len();
        let coeffs = (0..n)
            .map(|i| MultiPoly::from_terms(n, mons.iter().cloned().zip(v[i * m..(i + 1) * m].iter().cloned())))
            .collect();
        Derivation { coeffs }
    }

    /// Substitute `x_i <- images[i]` into every coefficient.
    pub fn substitute(&self, images: &[MultiPoly]) -> Vec<MultiPoly> {
        self.coeffs.iter().map(|p| p.substitute(images)).collect()
    }

    /// Leading monomial of the first nonzero coefficient, with its index.
    pub fn leading(&self) -> Option<(usize, Monomial)> {
        self.coeffs
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.leading_term().map(|(m, _)| (i, m.clone())))
    }

    /// Scale so the leading coefficient of the first nonzero entry is 1.
    pub fn normalized(&self) -> Derivation {
        match self
            .coeffs
            .iter()
            .find_map(|p| p.leading_term().map(|(_, c)| c.clone()))
        {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

const PARTIALS: [&str; 3] = ["dx", "dy", "dz"];

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_vars();
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = if n <= 3 {
                PARTIALS[i].to_string()
            } else {
                format!("dx{}", i + 1)
            };
            write!(f, "({p})*{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
