//! Minimal restriction numbers `t_A = min |(A ∪ H)^H|` over hyperplanes `H ∉ A`.
//!
//! For `H ∉ A`, `|(A ∪ H)^H| = |A| - sum (|A_X| - 1)` over the codimension 2
//! flats `X` of `A` lying in `H`, so the count depends only on which of those
//! flats `H` contains, and containing more flats never increases it. A
//! hyperplane containing two such flats is the unique one through both; one
//! containing a single flat can be swapped for any other non-member of that
//! flat's pencil without losing flats; one containing none does no better than
//! a generic hyperplane. The candidates below cover all three cases.

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::{rref_rows, Rational};
use crate::lattice::{Flat, Lattice};
use crate::logder::{degree_sequence, DegreeOptions, DegreeSequence, LogderError};

/// A candidate hyperplane with the codimension 2 flats it contains.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub hyperplane: Hyperplane,
    /// Indices into [`Lattice::codim2_flats`].
    pub flats: Vec<usize>,
    pub restriction: usize,
}

#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub t_value: usize,
    pub witness: Hyperplane,
    /// Largest number of codimension 2 flats inside a non-member hyperplane.
    pub r_value: usize,
    /// `t_A - (|A| - d_A)`, once a complete degree sequence is supplied.
    pub inequality_slack: Option<i64>,
}

impl RestrictionReport {
    /// Fill in the slack of `t_A >= |A| - d_A`.
    pub fn with_degrees(mut self, a: &Arrangement, seq: &DegreeSequence) -> Self {
        if seq.complete {
            let d = seq.d_max().unwrap_or(0) as i64;
            self.inequality_slack = Some(self.t_value as i64 - (a.len() as i64 - d));
        }
        self
    }

    /// `|A| - r_A`, the count that ignores multiplicities of the flats.
    pub fn unweighted_t(&self, a: &Arrangement) -> i64 {
        a.len() as i64 - self.r_value as i64
    }
}

/// The parameter sequence `1, -1, 2, -2, 3, ...`.
fn pencil_params() -> impl Iterator<Item = i64> {
    (1i64..).flat_map(|k| [k, -k])
}

fn add_scaled(u: &[Rational], s: i64, v: &[Rational]) -> Vec<Rational> {
    let s = Rational::from_int(s);
    u.iter().zip(v).map(|(a, b)| a + &(&s * b)).collect()
}

fn contained_flats(flats: &[Flat], h: &Hyperplane) -> Vec<usize> {
    (0..flats.len()).filter(|&i| flats[i].inside(h)).collect()
}

fn push_candidate(out: &mut Vec<Candidate>, a: &Arrangement, flats: &[Flat], h: Hyperplane) {
    if a.contains(&h) || out.iter().any(|c| c.hyperplane == h) {
        return;
    }
    out.push(Candidate {
        flats: contained_flats(flats, &h),
        restriction: a.restriction_size(&h),
        hyperplane: h,
    });
}

/// Candidates in a fixed order: hyperplanes through pairs of codimension 2
/// flats, then one pencil member per flat, then a generic hyperplane.
pub fn candidate_hyperplanes(a: &Arrangement) -> Vec<Candidate> {
    candidates_with(a, &Lattice::build(a))
}

pub fn candidates_with(a: &Arrangement, lattice: &Lattice) -> Vec<Candidate> {
    let n = a.dim();
    let flats = lattice.codim2_flats();
    let mut out = Vec::new();
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let mut rows = flats[i].equations.clone();
            rows.extend(flats[j].equations.iter().cloned());
            if rref_rows(n, rows).len() != 3 {
                continue;
            }
            // the row spaces meet in a line, spanned by the normal of the hyperplane
            let common = row_space_intersection(&flats[i].equations, &flats[j].equations, n);
            if let Ok(h) = Hyperplane::new(common) {
                push_candidate(&mut out, a, flats, h);
            }
        }
    }
    for f in flats {
        let (u, v) = (&f.equations[0], &f.equations[1]);
        let h = pencil_params()
            .map(|s| Hyperplane::new(add_scaled(u, s, v)).expect("independent rows"))
            .find(|h| !a.contains(h))
            .expect("a pencil has infinitely many members");
        push_candidate(&mut out, a, flats, h);
    }
    let generic = (2i64..)
        .map(|s| {
            let c: Vec<Rational> = (0..n as u32).map(|k| Rational::from_int(s).pow(k)).collect();
            Hyperplane::new(c).expect("nonzero")
        })
        .find(|h| !a.contains(h) && flats.iter().all(|f| !f.inside(h)))
        .expect("a moment-curve hyperplane avoids finitely many flats");
    push_candidate(&mut out, a, flats, generic);
    out
}

/// A nonzero vector in the intersection of two 2-dimensional row spaces that
/// meet in a line.
fn row_space_intersection(p: &[Vec<Rational>], q: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    // solve a p0 + b p1 - c q0 - d q1 = 0
    let cols: Vec<&Vec<Rational>> = vec![&p[0], &p[1], &q[0], &q[1]];
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            vec![
                cols[0][k].clone(),
                cols[1][k].clone(),
                -cols[2][k].clone(),
                -cols[3][k].clone(),
            ]
        })
        .collect();
    let ker = crate::exactmath::RatMatrix::from_rows(4, &rows).kernel_basis();
    let c = &ker[0];
    add_lin(&p[0], &c[0], &p[1], &c[1])
}

fn add_lin(u: &[Rational], a: &Rational, v: &[Rational], b: &Rational) -> Vec<Rational> {
    u.iter().zip(v).map(|(x, y)| &(a * x) + &(b * y)).collect()
}

/// `t_A`, a witness, and `r_A`. Ties go to the first candidate in enumeration order.
pub fn minimal_restriction(a: &Arrangement) -> RestrictionReport {
    let cands = candidate_hyperplanes(a);
    report_from(&cands)
}

fn report_from(cands: &[Candidate]) -> RestrictionReport {
    let best = cands
        .iter()
        .min_by_key(|c| c.restriction)
        .expect("the generic candidate always exists");
    RestrictionReport {
        t_value: best.restriction,
        witness: best.hyperplane.clone(),
        r_value: cands.iter().map(|c| c.flats.len()).max().unwrap_or(0),
        inequality_slack: None,
    }
}

#[derive(Clone, Debug)]
pub struct UnequalReport {
    pub t_value: usize,
    pub size: usize,
    pub d_value: u32,
    pub slack: i64,
    pub equality: bool,
    pub holds: bool,
}

/// Evaluate `t_A >= |A| - d_A` on a complete degree sequence.
pub fn check_unequal(a: &Arrangement, seq: &DegreeSequence) -> Result<UnequalReport, LogderError> {
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    let r = minimal_restriction(a);
    let d = seq.d_max().unwrap_or(0);
    let slack = r.t_value as i64 - (a.len() as i64 - d as i64);
    Ok(UnequalReport {
        t_value: r.t_value,
        size: a.len(),
        d_value: d,
        slack,
        equality: slack == 0,
        holds: slack >= 0,
    })
}

#[derive(Clone, Debug)]
pub struct TwoPointsReport {
    /// Two codimension 2 flats with no common hyperplane and `mu(p1) + mu(p2) = |A| - 2`.
    pub points: Option<(Flat, Flat)>,
    pub t_value: usize,
    pub d_value: Option<u32>,
    /// Whether the conclusions `t_A = 2` and `d_A >= |A| - 2` were observed.
    pub consistent: bool,
}

/// Look for two points carrying every line, and if found check `t_A = 2` and
/// `d_A >= |A| - 2`.
pub fn check_two_points(a: &Arrangement, opts: DegreeOptions) -> Result<TwoPointsReport, LogderError> {
    let lattice = Lattice::build(a);
    let flats = lattice.codim2_flats();
    let target = a.len() as i64 - 2;
    let mut points = None;
    'outer: for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let (p, q) = (&flats[i], &flats[j]);
            let disjoint = p.members.iter().all(|m| q.members.binary_search(m).is_err());
            let mu = |f: &Flat| f.multiplicity() as i64 - 1;
            if disjoint && mu(p) + mu(q) == target {
                points = Some((p.clone(), q.clone()));
                break 'outer;
            }
        }
    }
    let t_value = report_from(&candidates_with(a, &lattice)).t_value;
    if points.is_none() {
        return Ok(TwoPointsReport {
            points,
            t_value,
            d_value: None,
            consistent: true,
        });
    }
    let seq = degree_sequence(a, opts);
    if !seq.complete {
        return Err(LogderError::Incomplete);
    }
    let d = seq.d_max().unwrap_or(0);
    Ok(TwoPointsReport {
        points,
        t_value,
        d_value: Some(d),
        consistent: t_value == 2 && d as i64 >= target,
    })
}
