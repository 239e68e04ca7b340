//! Saito's criterion, Terao's b-polynomial and the addition construction.

use crate::arrangement::{rank_of, Arrangement, Hyperplane};
use crate::exactmath::{poly_gcd, poly_matrix_det, reduce_mod_form, MultiPoly, RatMatrix, Rational};

use super::derivation::Derivation;
use super::graded::{graded_dim, regularity_bound, span_dim_ambient, DegreeSequence};
use super::LogderError;

/// Outcome of Saito's criterion on a computed degree sequence.
#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub free: bool,
    /// Degrees of the basis when free.
    pub exponents: Option<Vec<u32>>,
    /// Determinant of the coefficient matrix when there are exactly ℓ generators.
    pub determinant: Option<MultiPoly>,
    /// `det / Q(A)` when that quotient is a nonzero constant.
    pub ratio: Option<Rational>,
}

/// Whether the generators in `seq` form a basis of `D(A)`.
pub fn is_free(a: &Arrangement, seq: &DegreeSequence) -> Result<FreenessCertificate, LogderError> {
    if !a.is_essential() {
        return Err(LogderError::NotEssential);
    }
    let n = a.dim();
    if seq.len() == n {
        let rows: Vec<Vec<MultiPoly>> = seq.generators.iter().map(|g| g.coeffs().to_vec()).collect();
        let det = poly_matrix_det(&rows, n)?;
        let ratio = saito_ratio(&det, &a.defining_poly());
        if let Some(c) = ratio.clone() {
            return Ok(FreenessCertificate {
                free: true,
                exponents: Some(seq.degrees.clone()),
                determinant: Some(det),
                ratio: Some(c),
            });
        }
        if !seq.complete {
            return Err(LogderError::Incomplete);
        }
        return Ok(FreenessCertificate {
            free: false,
            exponents: None,
            determinant: Some(det),
            ratio,
        });
    }
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    Ok(FreenessCertificate {
        free: false,
        exponents: None,
        determinant: None,
        ratio: None,
    })
}

/// `det / q` if it is a nonzero constant.
pub fn saito_ratio(det: &MultiPoly, q: &MultiPoly) -> Option<Rational> {
    if det.is_zero() {
        return None;
    }
    let quo = det.div_exact(q)?;
    quo.is_constant()
        .then(|| quo.coeff(&crate::exactmath::Monomial::one(q.num_vars())))
}

/// Images `theta(alpha_H) mod alpha_H` of the given derivations.
fn images_mod(gens: &[Derivation], h: &Hyperplane) -> Vec<MultiPoly> {
    let form = h.form();
    gens.iter()
        .map(|g| reduce_mod_form(&g.apply_linear(h.coeffs()), &form).expect("linear form"))
        .collect()
}

/// Terao's polynomial `b` for adding `h` to `A'`: the gcd of the images of the
/// generators of `D(A')` modulo `alpha_H`. Its degree must equal
/// `|A'| - |(A' ∪ h)^h|`; a mismatch is an error.
pub fn terao_b_poly(a_prime: &Arrangement, h: &Hyperplane, seq: &DegreeSequence) -> Result<MultiPoly, LogderError> {
    if a_prime.contains(h) {
        return Err(LogderError::Member(h.to_string()));
    }
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    b_from_generators(a_prime, h, &seq.all_generators())
}

fn b_from_generators(a_prime: &Arrangement, h: &Hyperplane, gens: &[Derivation]) -> Result<MultiPoly, LogderError> {
    let images: Vec<MultiPoly> = images_mod(gens, h).into_iter().filter(|p| !p.is_zero()).collect();
    if images.is_empty() {
        return Err(LogderError::Degenerate(h.to_string()));
    }
    let b = poly_gcd(&images)?;
    let expected = (a_prime.len() - a_prime.restriction_size(h)) as u32;
    let got = b.degree().unwrap_or(0);
    if got != expected {
        return Err(LogderError::DegreeIdentity { expected, got });
    }
    Ok(b)
}

/// Generators of `D(A' ∪ {H_1, ..., H_q})` built from generators of `D(A')`.
#[derive(Clone, Debug)]
pub struct AdditionResult {
    pub arrangement: Arrangement,
    pub generators: Vec<Derivation>,
    pub degrees: Vec<u32>,
    /// `c_ij` with `phi_i(alpha_{H_j}) = c_ij b_j` modulo `alpha_{H_j}`.
    pub c_matrix: Vec<Vec<Rational>>,
    pub b_polys: Vec<MultiPoly>,
    /// Degrees through which the output was checked to span `D(A)`.
    pub verified_through: u32,
}

/// Run the addition construction on the generators of a computed degree sequence.
pub fn addition_generators(
    a_prime: &Arrangement,
    hs: &[Hyperplane],
    seq: &DegreeSequence,
    verify_up_to: Option<u32>,
) -> Result<AdditionResult, LogderError> {
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    addition_from_generators(a_prime, hs, &seq.all_generators(), verify_up_to)
}

/// The addition construction on an explicit generating set of `D(A')`.
///
/// Checks (1) the new forms are independent, (2) their common flat `X` is not
/// inside any hyperplane of `A'`, shown by a rational point of `X` off `∪A'`,
/// and (3) `|A'| - |(A' ∪ H_i)^{H_i}| = d` for the top degree `d`.
pub fn addition_from_generators(
    a_prime: &Arrangement,
    hs: &[Hyperplane],
    gens: &[Derivation],
    verify_up_to: Option<u32>,
) -> Result<AdditionResult, LogderError> {
    let n = a_prime.dim();
    let gens: Vec<Derivation> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut arrangement = a_prime.clone();
    for h in hs {
        arrangement = arrangement.add(h)?;
    }
    let d = gens.iter().filter_map(Derivation::degree).max().unwrap_or(0);
    let q = hs.len();

    // (1)
    let refs: Vec<&Hyperplane> = hs.iter().collect();
    if rank_of(&refs) != q {
        return Err(LogderError::AdditionCondition {
            condition: 1,
            detail: "the added hyperplanes are linearly dependent".into(),
        });
    }
    // (2)
    point_off_arrangement(a_prime, hs)?;
    // (3)
    for h in hs {
        let m = a_prime.len() - a_prime.restriction_size(h);
        if m as u32 != d {
            return Err(LogderError::AdditionCondition {
                condition: 3,
                detail: format!("|A'| - |A^H| = {m} for {h}, but the top generator degree is {d}"),
            });
        }
    }

    let (thetas, phis): (Vec<Derivation>, Vec<Derivation>) =
        gens.into_iter().partition(|g| g.degree().unwrap_or(0) < d);

    let mut b_polys = Vec::new();
    let mut c = vec![vec![Rational::zero(); q]; phis.len()];
    for (j, h) in hs.iter().enumerate() {
        let all: Vec<Derivation> = thetas.iter().chain(&phis).cloned().collect();
        let b = b_from_generators(a_prime, h, &all)?;
        if images_mod(&thetas, h).iter().any(|p| !p.is_zero()) {
            return Err(LogderError::Inconsistent(
                "a lower-degree generator is not tangent to an added hyperplane".into(),
            ));
        }
        for (i, img) in images_mod(&phis, h).iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let quo = img
                .div_exact(&b)
                .filter(MultiPoly::is_constant)
                .ok_or(LogderError::NonConstantCoefficient)?;
            c[i][j] = quo.coeff(&crate::exactmath::Monomial::one(n));
        }
        b_polys.push(b);
    }

    // pivot rows chosen from the bottom up, so the last independent rows carry E_q
    let mut pivots: Vec<usize> = Vec::new();
    for i in (0..phis.len()).rev() {
        let mut rows: Vec<Vec<Rational>> = pivots.iter().map(|&p| c[p].clone()).collect();
        rows.push(c[i].clone());
        if crate::exactmath::subspace_dim(&rows) == pivots.len() + 1 {
            pivots.push(i);
        }
        if pivots.len() == q {
            break;
        }
    }
    if pivots.len() < q {
        return Err(LogderError::Inconsistent(format!(
            "rank of C is {} < q = {q}",
            pivots.len()
        )));
    }
    pivots.sort_unstable();
    let p_rows: Vec<Vec<Rational>> = pivots.iter().map(|&p| c[p].clone()).collect();
    let pinv = RatMatrix::from_rows(q, &p_rows)
        .inverse()
        .expect("pivot rows are independent");
    let new_phi: Vec<Derivation> = (0..q)
        .map(|j| {
            pivots.iter().enumerate().fold(Derivation::zero(n), |acc, (k, &p)| {
                let f = pinv.get(j, k);
                if f.is_zero() {
                    acc
                } else {
                    acc.add(&phis[p].scale(f))
                }
            })
        })
        .collect();

    let mut generators: Vec<Derivation> = thetas.clone();
    for (j, h) in hs.iter().enumerate() {
        generators.push(new_phi[j].mul_poly(&h.form()));
    }
    for (i, phi) in phis.iter().enumerate() {
        if pivots.contains(&i) {
            continue;
        }
        let mut g = phi.clone();
        for (j, np) in new_phi.iter().enumerate() {
            if !c[i][j].is_zero() {
                g = g.sub(&np.scale(&c[i][j]));
            }
        }
        if !g.is_zero() {
            generators.push(g);
        }
    }
    let degrees: Vec<u32> = generators.iter().map(|g| g.degree().unwrap_or(0)).collect();

    for g in &generators {
        if !g.is_logarithmic(&arrangement) {
            return Err(LogderError::Inconsistent(format!("constructed {g} is not in D(A)")));
        }
    }
    let top = degrees.iter().copied().max().unwrap_or(0);
    let through = verify_up_to.unwrap_or_else(|| top.max(regularity_bound(&arrangement)));
    for e in 0..=through {
        let want = graded_dim(&arrangement, e).dim();
        let got = span_dim_ambient(&generators, n, e);
        if want != got {
            return Err(LogderError::Inconsistent(format!(
                "output spans {got} of the {want} dimensions of D(A) in degree {e}"
            )));
        }
    }
    Ok(AdditionResult {
        arrangement,
        generators,
        degrees,
        c_matrix: c,
        b_polys,
        verified_through: through,
    })
}

/// A rational point of `X = ∩ hs` outside every hyperplane of `a_prime`.
///
/// Points `sum_i s^i k_i` along a moment curve in `X` are tried for
/// `s = 1, 2, ...`; a hyperplane not containing `X` vanishes for at most
/// `dim X - 1` of them.
pub fn point_off_arrangement(a_prime: &Arrangement, hs: &[Hyperplane]) -> Result<Vec<Rational>, LogderError> {
    let n = a_prime.dim();
    let rows: Vec<Vec<Rational>> = hs.iter().map(|h| h.coeffs().to_vec()).collect();
    let kernel = if rows.is_empty() {
        (0..n).map(|i| RatMatrix::identity(n).row(i).to_vec()).collect()
    } else {
        RatMatrix::from_rows(n, &rows).kernel_basis()
    };
    for h in a_prime.hyperplanes() {
        if kernel.iter().all(|k| h.eval(k).is_zero()) {
            return Err(LogderError::AdditionCondition {
                condition: 2,
                detail: format!("the flat of the added hyperplanes lies inside {h}"),
            });
        }
    }
    let attempts = 10 * a_prime.len().max(1);
    for s in 1..=attempts as i64 {
        let s = Rational::from_int(s);
        let mut p = vec![Rational::zero(); n];
        let mut w = Rational::one();
        for k in &kernel {
            for (x, y) in p.iter_mut().zip(k) {
                *x += &(&w * y);
            }
            w = &w * &s;
        }
        if a_prime.hyperplanes().iter().all(|h| !h.eval(&p).is_zero()) {
            return Ok(p);
        }
    }
    Err(LogderError::PointSearchExhausted(attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logder::{degree_sequence, DegreeOptions};

    fn arr(dim: usize, rows: &[&[i64]]) -> Arrangement {
        Arrangement::from_int_rows(dim, rows).unwrap()
    }

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    fn xyz4() -> Arrangement {
        arr(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, -1], &[0, 1, -1]])
    }

    fn hxy() -> Hyperplane {
        Hyperplane::from_ints(&[1, -1, 0]).unwrap()
    }

    #[test]
    fn boolean_is_free() {
        let b = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let s = degree_sequence(&b, DegreeOptions::default());
        let cert = is_free(&b, &s).unwrap();
        assert!(cert.free);
        assert_eq!(cert.exponents, Some(vec![1, 1, 1]));
    }

    #[test]
    fn addition_example_is_free_after_adding() {
        let a = xyz4().add(&hxy()).unwrap();
        let s = degree_sequence(&a, DegreeOptions::default());
        let cert = is_free(&a, &s).unwrap();
        assert!(cert.free);
        assert_eq!(cert.exponents, Some(vec![1, 2, 2]));
        let s4 = degree_sequence(&xyz4(), DegreeOptions::default());
        assert!(!is_free(&xyz4(), &s4).unwrap().free);
    }

    #[test]
    fn non_essential_is_rejected() {
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let s = degree_sequence(&a, DegreeOptions::default());
        assert!(matches!(is_free(&a, &s), Err(LogderError::NotEssential)));
    }

    #[test]
    fn b_poly_degree_identity() {
        let s = degree_sequence(&xyz4(), DegreeOptions::default());
        let b = terao_b_poly(&xyz4(), &hxy(), &s).unwrap();
        assert_eq!(b.degree(), Some(2));
        // x(x - z) after substituting y <- x
        assert_eq!(b, &x(0) * &(&x(0) - &x(2)));
        assert!(terao_b_poly(&xyz4(), xyz4().get(0), &s).is_err());
    }

    fn listed_generators() -> Vec<Derivation> {
        let z = MultiPoly::zero(3);
        vec![
            Derivation::euler(3),
            Derivation::new(vec![&x(0) * &(&x(0) - &x(2)), z.clone(), z.clone()]).unwrap(),
            Derivation::new(vec![z.clone(), &x(1) * &(&x(1) - &x(2)), z.clone()]).unwrap(),
            Derivation::new(vec![z.clone(), z.clone(), &(&x(0) - &x(2)) * &(&x(1) - &x(2))]).unwrap(),
        ]
    }

    #[test]
    fn addition_reproduces_the_stated_generators() {
        let r = addition_from_generators(&xyz4(), &[hxy()], &listed_generators(), Some(6)).unwrap();
        assert_eq!(r.degrees, vec![1, 3, 2, 2]);
        let z = MultiPoly::zero(3);
        let expect = [
            Derivation::euler(3),
            Derivation::new(vec![
                z.clone(),
                &(&(&x(0) - &x(1)) * &x(1)) * &(&x(1) - &x(2)),
                z.clone(),
            ])
            .unwrap(),
            Derivation::new(vec![&x(0) * &(&x(0) - &x(2)), &x(1) * &(&x(1) - &x(2)), z.clone()]).unwrap(),
            Derivation::new(vec![z.clone(), z.clone(), &(&x(0) - &x(2)) * &(&x(1) - &x(2))]).unwrap(),
        ];
        let got: Vec<Derivation> = r.generators.iter().map(Derivation::normalized).collect();
        let want: Vec<Derivation> = expect.iter().map(Derivation::normalized).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn addition_from_computed_sequence() {
        let s = degree_sequence(&xyz4(), DegreeOptions::default());
        let r = addition_generators(&xyz4(), &[hxy()], &s, Some(6)).unwrap();
        let mut d = r.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 2, 3]);
        assert_eq!(r.verified_through, 6);
    }

    #[test]
    fn addition_conditions_are_enforced() {
        let s = degree_sequence(&xyz4(), DegreeOptions::default());
        let generic = Hyperplane::from_ints(&[1, 2, 5]).unwrap();
        match addition_generators(&xyz4(), &[generic], &s, None) {
            Err(LogderError::AdditionCondition { condition, .. }) => assert_eq!(condition, 3),
            other => panic!("unexpected {other:?}"),
        }
        let r = addition_generators(&xyz4(), &[], &s, None).unwrap();
        assert_eq!(r.degrees, s.full_degrees());
    }
}
