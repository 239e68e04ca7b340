//! Multivariate polynomial GCD over Q.
//!
//! Recursive primitive remainder sequences: a polynomial is viewed as univariate
//! in its first occurring variable with coefficients in the remaining ones.

use super::poly::{Monomial, MultiPoly};
use super::rational::Rational;
use super::MathError;

/// Coefficients of `p` as a polynomial in `x_v`: entry `k` multiplies `x_v^k`.
fn coefficients_in(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let n = p.num_vars();
    let mut out: Vec<MultiPoly> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents()[v] as usize;
        if out.len() <= e {
            out.resize(e + 1, MultiPoly::zero(n));
        }
        let mut ex = m.exponents().to_vec();
        ex[v] = 0;
        out[e].add_term(Monomial::from_exponents(ex), c);
    }
    out
}

fn degree_in(p: &MultiPoly, v: usize) -> usize {
    p.terms().map(|(m, _)| m.exponents()[v] as usize).max().unwrap_or(0)
}

fn first_var(p: &MultiPoly) -> Option<usize> {
    (0..p.num_vars()).find(|&i| p.uses_var(i))
}

/// Content of `p` with respect to `x_v` (gcd of its coefficients).
fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let n = p.num_vars();
    coefficients_in(p, v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(MultiPoly::zero(n), |g, c| gcd2(&g, c))
}

/// Pseudo-remainder of `a` by `b` in `x_v`; `b` must involve `x_v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = a.num_vars();
    let db = degree_in(b, v);
    let lb = coefficients_in(b, v).swap_remove(db);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, v) >= db {
        let dr = degree_in(&r, v);
        let lr = coefficients_in(&r, v).swap_remove(dr);
        let shift = MultiPoly::var(n, v).pow((dr - db) as u32);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    r
}

fn gcd2(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.num_vars());
    }
    let va = first_var(a);
    let vb = first_var(b);
    let v = match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        _ => unreachable!("non-constant polynomials use some variable"),
    };
    if !a.uses_var(v) {
        return gcd2(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd2(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd2(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if degree_in(&p, v) < degree_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.uses_var(v) {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, v);
            r.div_exact(&cr).expect("content divides")
        };
    }
    let g = if q.is_zero() {
        p
    } else {
        // nonzero remainder free of x_v: the primitive parts are coprime in x_v
        MultiPoly::one(a.num_vars())
    };
    let gp = match g.uses_var(v) {
        true => {
            let cg = content_in(&g, v);
            g.div_exact(&cg).expect("content divides")
        }
        false => MultiPoly::one(a.num_vars()),
    };
    (&c * &gp).monic()
}

/// GCD of a nonempty list, normalized so the graded-lex leading coefficient is 1.
pub fn poly_gcd(ps: &[MultiPoly]) -> Result<MultiPoly, MathError> {
    let first = ps.first().ok_or(MathError::AllZeroGcd)?;
    let n = first.num_vars();
    if ps.iter().any(|p| p.num_vars() != n) {
        return Err(MathError::VariableCountMismatch {
            left: n,
            right: ps.iter().find(|p| p.num_vars() != n).unwrap().num_vars(),
        });
    }
    if ps.iter().all(MultiPoly::is_zero) {
        return Err(MathError::AllZeroGcd);
    }
    let mut g = MultiPoly::zero(n);
    for p in ps {
        g = gcd2(&g, p);
        if g.is_constant() && !g.is_zero() {
            return Ok(MultiPoly::constant(n, Rational::one()));
        }
    }
    Ok(g)
}
