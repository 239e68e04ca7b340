//! Criteria linking generator degrees of `D(A')` and `D(A' ∪ {H})` to
//! restriction counts and the characteristic polynomial.

use crate::arrangement::{Arrangement, Hyperplane};
use crate::lattice::char_poly;

use super::freeness::is_free;
use super::graded::{degree_sequence, DegreeOptions, DegreeSequence};
use super::LogderError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotFree,
    FreeConfirmed,
    HypothesesUnmet,
    Inapplicable,
}

/// Outcome of the non-freeness test for `A' = A \ {H}` from a factored `chi(A', t)`.
#[derive(Clone, Debug)]
pub struct NonfreeReport {
    pub verdict: Verdict,
    /// Integer roots of `chi(A', t)`, ascending, when it splits.
    pub roots: Option<Vec<i64>>,
    /// `|A^H|`.
    pub restriction: usize,
    /// `d_1 + ... + d_{ℓ-1} - 1`.
    pub threshold: Option<i64>,
    pub note: Option<String>,
}

/// Whether `|A^H| <= sum_{i<ℓ} d_i - 1` when `chi(A \ {H}, t) = prod (t - d_i)`.
pub fn check_nonfree_criterion(a: &Arrangement, h: &Hyperplane) -> Result<NonfreeReport, LogderError> {
    if !a.contains(h) {
        return Err(LogderError::Malformed(format!("{h} is not in the arrangement")));
    }
    let a_prime = a.delete(h)?;
    let restriction = a.restriction_size(h);
    let Some(roots) = char_poly(&a_prime).integer_roots() else {
        return Ok(NonfreeReport {
            verdict: Verdict::Inapplicable,
            roots: None,
            restriction,
            threshold: None,
            note: Some("chi(A', t) does not split over Z, so A' is not free".into()),
        });
    };
    let l = roots.len();
    let threshold = roots[..l - 1].iter().sum::<i64>() - 1;
    let verdict = if (restriction as i64) <= threshold {
        Verdict::NotFree
    } else {
        Verdict::Inapplicable
    };
    Ok(NonfreeReport {
        verdict,
        roots: Some(roots),
        restriction,
        threshold: Some(threshold),
        note: None,
    })
}

/// Whether `|(A' ∪ {H})^H| <= |A'| - d`, which forces a generator of `D(A')`
/// of degree at least `d`.
pub fn generator_degree_lower_bound(a_prime: &Arrangement, h: &Hyperplane, d: u32) -> Result<bool, LogderError> {
    if a_prime.contains(h) {
        return Err(LogderError::Member(h.to_string()));
    }
    Ok(a_prime.restriction_size(h) as i64 <= a_prime.len() as i64 - d as i64)
}

fn complete_sequence(a: &Arrangement, opts: DegreeOptions) -> Result<DegreeSequence, LogderError> {
    let s = degree_sequence(a, opts);
    if s.complete {
        Ok(s)
    } else {
        Err(LogderError::Incomplete)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumgenCase {
    /// `|A'| - |A^H| = d`: `n_d(A') - 1 <= n_d(A)`.
    Top { d: u32 },
    /// `|A'| - |A^H| = e + 1 <= d`: `n_e(A') <= n_e(A)`.
    Below { e: u32 },
    /// `|A'| - |A^H| > d`, excluded by `t_A >= |A| - d_A`.
    None,
}

#[derive(Clone, Debug)]
pub struct NumgenReport {
    pub case: NumgenCase,
    pub d: u32,
    pub gap: usize,
    pub n_prime: usize,
    pub n_full: usize,
    pub holds: bool,
    pub degrees_prime: Vec<u32>,
    pub degrees_full: Vec<u32>,
}

/// Compare generator counts of `D(A')` and `D(A' ∪ {H})` by degree.
pub fn check_numgen_bounds(
    a_prime: &Arrangement,
    h: &Hyperplane,
    opts: DegreeOptions,
) -> Result<NumgenReport, LogderError> {
    if a_prime.contains(h) {
        return Err(LogderError::Member(h.to_string()));
    }
    let a = a_prime.add(h)?;
    let sp = complete_sequence(a_prime, opts)?;
    let sa = complete_sequence(&a, opts)?;
    let d = *sp.full_degrees().last().unwrap_or(&0);
    let gap = a_prime.len() - a_prime.restriction_size(h);
    let (case, n_prime, n_full, holds) = if gap as u32 == d {
        let (np, na) = (sp.n_le(d), sa.n_le(d));
        (NumgenCase::Top { d }, np, na, np <= na + 1)
    } else if gap >= 1 && (gap as u32) < d {
        let e = gap as u32 - 1;
        let (np, na) = (sp.n_le(e), sa.n_le(e));
        (NumgenCase::Below { e }, np, na, np <= na)
    } else if gap == 0 {
        (NumgenCase::Below { e: 0 }, 0, 0, true)
    } else {
        (NumgenCase::None, 0, 0, false)
    };
    Ok(NumgenReport {
        case,
        d,
        gap,
        n_prime,
        n_full,
        holds,
        degrees_prime: sp.full_degrees(),
        degrees_full: sa.full_degrees(),
    })
}

#[derive(Clone, Debug)]
pub struct FourGensReport {
    pub verdict: Verdict,
    pub degrees_prime: Vec<u32>,
    pub exponents: Option<Vec<u32>>,
}

/// In `K^3`, with `D(A')` minimally generated in degrees `(1, d1, d2, d3)`,
/// `|A'| - |A^H| = d3` and `1 + d1 + d2 = |A|` give `A` free with exponents
/// `(1, d1, d2)`. The conclusion is checked with Saito's criterion.
pub fn check_4gens_freeness(
    a_prime: &Arrangement,
    h: &Hyperplane,
    opts: DegreeOptions,
) -> Result<FourGensReport, LogderError> {
    let unmet = |degrees_prime: Vec<u32>| FourGensReport {
        verdict: Verdict::HypothesesUnmet,
        degrees_prime,
        exponents: None,
    };
    if a_prime.dim() != 3 || a_prime.contains(h) {
        return Ok(unmet(Vec::new()));
    }
    let sp = complete_sequence(a_prime, opts)?;
    let deg = sp.full_degrees();
    if deg.len() != 4 || deg[0] != 1 {
        return Ok(unmet(deg));
    }
    let (d1, d2, d3) = (deg[1], deg[2], deg[3]);
    let a = a_prime.add(h)?;
    let gap = (a_prime.len() - a_prime.restriction_size(h)) as u32;
    if gap != d3 || (1 + d1 + d2) as usize != a.len() {
        return Ok(unmet(deg));
    }
    let sa = complete_sequence(&a, opts)?;
    let cert = is_free(&a, &sa)?;
    let want = vec![1, d1, d2];
    if !cert.free || cert.exponents.as_ref() != Some(&want) {
        return Err(LogderError::Inconsistent(format!(
            "hypotheses hold but A has degrees {:?}",
            sa.full_degrees()
        )));
    }
    Ok(FourGensReport {
        verdict: Verdict::FreeConfirmed,
        degrees_prime: deg,
        exponents: Some(want),
    })
}

#[derive(Clone, Debug)]
pub struct ThreeNonfreeReport {
    pub verdict: Verdict,
    /// `(a, b)` with `chi(A, t) = (t - 1)(t - a)(t - b)`, `a <= b`.
    pub ab: Option<(i64, i64)>,
    /// Degree sequence of `A'`, whose length is the `k` used in the test.
    pub degrees_prime: Vec<u32>,
    pub gap: usize,
    pub note: String,
}

/// In `K^3` with `chi(A, t) = (t-1)(t-a)(t-b)`: if `D(A')` needs `k >= 5`
/// generators, `|A'| - |A^H| = d_k` and `b <= d_k`, then `A` is not free.
///
/// The length condition is read on `A'`, where the argument uses it; read on
/// `A` the conclusion would be immediate.
pub fn check_3nonfree(
    a_prime: &Arrangement,
    h: &Hyperplane,
    opts: DegreeOptions,
) -> Result<ThreeNonfreeReport, LogderError> {
    let note = "k is the number of generators of D(A')".to_string();
    let inapplicable = |ab, degrees_prime, gap| ThreeNonfreeReport {
        verdict: Verdict::Inapplicable,
        ab,
        degrees_prime,
        gap,
        note: note.clone(),
    };
    if a_prime.dim() != 3 || a_prime.contains(h) {
        return Ok(inapplicable(None, Vec::new(), 0));
    }
    let a = a_prime.add(h)?;
    let gap = a_prime.len() - a_prime.restriction_size(h);
    let roots = char_poly(&a).integer_roots();
    let ab = match roots.as_deref() {
        Some([1, x, y]) => Some((*x, *y)),
        Some([x, 1, y]) | Some([x, y, 1]) => Some((*x, *y)),
        _ => None,
    };
    let Some((_, b)) = ab else {
        return Ok(inapplicable(None, Vec::new(), gap));
    };
    let sp = complete_sequence(a_prime, opts)?;
    let deg = sp.full_degrees();
    if three_nonfree_applies(b, &deg, gap) {
        Ok(ThreeNonfreeReport {
            verdict: Verdict::NotFree,
            ab,
            degrees_prime: deg,
            gap,
            note,
        })
    } else {
        Ok(inapplicable(ab, deg, gap))
    }
}

/// The numerical hypotheses: `k >= 5`, `gap = d_k` and `b <= d_k`.
pub fn three_nonfree_applies(b: i64, degrees_prime: &[u32], gap: usize) -> bool {
    let dk = *degrees_prime.last().unwrap_or(&0);
    degrees_prime.len() >= 5 && gap as u32 == dk && b <= dk as i64
}
