//! Degree-by-degree linear algebra for `D(A)`.
//!
//! Two engines share the reduction machinery. The ambient one solves for all
//! `ℓ·C(d+ℓ-1, ℓ-1)` coefficients directly and serves as the reference. The
//! adapted one first passes to the essentialization, uses the first `r`
//! independent hyperplanes as coordinates `y_k`, and writes `p_k = y_k q_k`;
//! only the remaining hyperplanes then contribute equations.

use std::collections::HashMap;

use crate::arrangement::{Arrangement, Essentialization};
use crate::exactmath::{
    monomials_of_degree, pivot_index, sparse_to_dense, Echelon, Monomial, MultiPoly, Rational, SparseVec,
};

use super::derivation::Derivation;

/// Reduction of monomials modulo one linear form, eliminating its pivot
/// (largest-index) variable.
struct Reducer {
    pivot: usize,
    powers: Vec<MultiPoly>,
}

impl Reducer {
    fn new(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let pivot = pivot_index(coeffs).expect("nonzero form");
        let inv = -coeffs[pivot].recip();
        let mut sub = MultiPoly::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if k != pivot && !c.is_zero() {
                sub.add_term(Monomial::var(n, k), &(c * &inv));
            }
        }
        Reducer {
            pivot,
            powers: vec![MultiPoly::one(n), sub],
        }
    }

    fn reduce(&mut self, m: &Monomial) -> MultiPoly {
        let e = m.exponents()[self.pivot] as usize;
        while self.powers.len() <= e {
            let next = self.powers.last().unwrap() * &self.powers[1];
            self.powers.push(next);
        }
        let mut rest = m.exponents().to_vec();
        rest[self.pivot] = 0;
        self.powers[e].mul_monomial(&Monomial::from_exponents(rest))
    }
}

/// Accumulates constraint rows keyed by the output monomial.
struct RowBuilder {
    index: HashMap<Monomial, usize>,
    rows: Vec<SparseVec>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder {
            index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    /// Columns must be fed in increasing order so rows stay sorted.
    fn add(&mut self, col: usize, scale: &Rational, p: &MultiPoly) {
        for (m, c) in p.terms() {
            let next = self.rows.len();
            let r = *self.index.entry(m.clone()).or_insert(next);
            if r == next {
                self.rows.push(Vec::new());
            }
            self.rows[r].push((col, c * scale));
        }
    }
}

fn monomial_index(mons: &[Monomial]) -> HashMap<Monomial, usize> {
    mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// The degree-`d` piece of `D(A)` with an explicit basis.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Derivation>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `D(A)_d` by solving for every coefficient in ambient coordinates.
pub fn graded_dim(a: &Arrangement, d: u32) -> GradedPiece {
    let n = a.dim();
    let mons = monomials_of_degree(n, d);
    let m = mons.len();
    let mut e = Echelon::new(n * m);
    for h in a.hyperplanes() {
        let mut red = Reducer::new(h.coeffs());
        let reduced: Vec<MultiPoly> = mons.iter().map(|mm| red.reduce(mm)).collect();
        let mut rb = RowBuilder::new();
        for (j, c) in h.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, p) in reduced.iter().enumerate() {
                rb.add(j * m + t, c, p);
            }
        }
        for row in &rb.rows {
            e.insert(row);
        }
    }
    let basis = e
        .null_space()
        .iter()
        .map(|v| Derivation::from_vector(n, d, &sparse_to_dense(v, n * m)))
        .collect();
    GradedPiece { degree: d, basis }
}

/// Dimension of `(S · gens)_d` inside `Der(S)_d`.
pub fn span_dim_ambient(gens: &[Derivation], n: usize, d: u32) -> usize {
    let mons = monomials_of_degree(n, d);
    let m = mons.len();
    let idx = monomial_index(&mons);
    let mut e = Echelon::new(n * m);
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for u in monomials_of_degree(n, d - dg) {
            let mut v: SparseVec = Vec::new();
            for (i, p) in g.coeffs().iter().enumerate() {
                for (mm, c) in p.terms() {
                    v.push((i * m + idx[&mm.mul(&u)], c.clone()));
                }
            }
            v.sort_unstable_by_key(|x| x.0);
            e.insert(&v);
        }
    }
    e.rank()
}

/// Options for [`degree_sequence`].
#[derive(Clone, Copy, Debug)]
pub struct DegreeOptions {
    /// Largest degree searched; `None` means [`default_cap`].
    pub max_degree: Option<u32>,
    /// Stop at the regularity bound `|A| - rank + 1`, past which no minimal
    /// generator can occur.
    pub regularity_bound: bool,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            max_degree: None,
            regularity_bound: true,
        }
    }
}

pub fn default_cap(a: &Arrangement) -> u32 {
    a.len().max(2 * a.dim()) as u32
}

/// Upper bound on the degrees of minimal generators of `D(A)`.
pub fn regularity_bound(a: &Arrangement) -> u32 {
    let r = a.rank();
    if r == 0 {
        0
    } else {
        (a.len() - r + 1) as u32
    }
}

/// Minimal generator degrees of `D(A)`, with generators.
#[derive(Clone, Debug)]
pub struct DegreeSequence {
    /// Degrees for the essentialization, non-decreasing.
    pub degrees: Vec<u32>,
    /// Ambient generators aligned with `degrees`.
    pub generators: Vec<Derivation>,
    /// The same generators in the coordinates of the essentialization.
    pub essential_generators: Vec<Derivation>,
    /// Number of constant generators along the center (`ℓ - rank`).
    pub center_dim: usize,
    pub center_generators: Vec<Derivation>,
    /// `dim D(A_ess)_d` for `d = 1..=max_degree_searched`.
    pub graded_dims: Vec<usize>,
    pub max_degree_searched: u32,
    pub cap: u32,
    /// The cap was reached while the last two degrees still produced generators.
    pub truncated: bool,
    /// The search covered every degree up to the regularity bound.
    pub complete: bool,
}

impl DegreeSequence {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `d_A`, the largest generator degree.
    pub fn d_max(&self) -> Option<u32> {
        self.degrees.last().copied().or((self.center_dim > 0).then_some(0))
    }

    /// Degrees of a minimal generating set of `D(A)` in the ambient ring,
    /// including the degree-0 generators along the center.
    pub fn full_degrees(&self) -> Vec<u32> {
        let mut v = vec![0; self.center_dim];
        v.extend(&self.degrees);
        v
    }

    /// Every generator in the ambient ring, center first.
    pub fn all_generators(&self) -> Vec<Derivation> {
        let mut v = self.center_generators.clone();
        v.extend(self.generators.iter().cloned());
        v
    }

    /// `n_i = #{j : d_j <= i}` over the full degree list.
    pub fn n_le(&self, i: u32) -> usize {
        self.full_degrees().iter().filter(|&&d| d <= i).count()
    }

    /// Number of generators of exactly degree `d`.
    pub fn count_at(&self, d: u32) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }
}

/// The coefficient space of degree `d` in adapted coordinates: column
/// `k * m + t` is the coefficient of the `t`-th degree `d-1` monomial in `q_k`.
struct Space {
    d: u32,
    mons: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    r: usize,
}

impl Space {
    fn new(r: usize, d: u32) -> Self {
        let mons = monomials_of_degree(r, d - 1);
        let index = monomial_index(&mons);
        Space { d, mons, index, r }
    }

    fn m(&self) -> usize {
        self.mons.len()
    }

    fn ncols(&self) -> usize {
        self.r * self.m()
    }

    fn to_q(&self, v: &SparseVec) -> Vec<MultiPoly> {
        let m = self.m();
        let mut q = vec![MultiPoly::zero(self.r); self.r];
        for (col, c) in v {
            q[col / m].add_term(self.mons[col % m].clone(), c);
        }
        q
    }
}

/// Graded solver for an essential arrangement whose hyperplanes `basis[k]`
/// are the coordinate hyperplanes `y_k`.
pub(crate) struct AdaptedEngine {
    r: usize,
    constraints: Vec<Vec<Rational>>,
}

impl AdaptedEngine {
    pub(crate) fn new(ess: &Essentialization) -> Self {
        let constraints = ess
            .essential
            .hyperplanes()
            .iter()
            .enumerate()
            .filter(|(i, _)| !ess.basis.contains(i))
            .map(|(_, h)| h.coeffs().to_vec())
            .collect();
        AdaptedEngine {
            r: ess.essential.dim(),
            constraints,
        }
    }

    /// Basis of `D_d` as sparse vectors in the adapted space.
    fn kernel(&self, sp: &Space) -> Vec<SparseVec> {
        let m = sp.m();
        let mut e = Echelon::new(sp.ncols());
        for c in &self.constraints {
            let mut red = Reducer::new(c);
            let mut rb = RowBuilder::new();
            for (k, ck) in c.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let yk = Monomial::var(self.r, k);
                for (t, mt) in sp.mons.iter().enumerate() {
                    let p = red.reduce(&yk.mul(mt));
                    rb.add(k * m + t, ck, &p);
                }
            }
            for row in &rb.rows {
                e.insert(row);
            }
        }
        e.null_space()
    }

    /// All monomial multiples of `q` landing in the space of `sp`.
    fn multiples(&self, q: &[MultiPoly], deg: u32, sp: &Space, out: &mut Echelon, target: usize) {
        let m = sp.m();
        for u in monomials_of_degree(self.r, sp.d - deg) {
            if out.rank() == target {
                return;
            }
            let mut v: SparseVec = Vec::new();
            for (k, qk) in q.iter().enumerate() {
                for (mm, c) in qk.terms() {
                    v.push((k * m + sp.index[&mm.mul(&u)], c.clone()));
                }
            }
            v.sort_unstable_by_key(|x| x.0);
            out.insert(&v);
        }
    }
}

struct Found {
    degree: u32,
    q: Vec<MultiPoly>,
}

fn essential_derivation(r: usize, q: &[MultiPoly]) -> Derivation {
    Derivation::from_parts_unchecked(q.iter().enumerate().map(|(k, qk)| qk * &MultiPoly::var(r, k)).collect())
}

/// Push an essential derivation back to the ambient ring.
fn lift(a: &Arrangement, ess: &Essentialization, theta: &Derivation) -> Derivation {
    let n = a.dim();
    let images = ess.coordinate_forms(a);
    let pk: Vec<MultiPoly> = theta.substitute(&images);
    let mut coeffs = vec![MultiPoly::zero(n); n];
    for (k, p) in pk.iter().enumerate() {
        for (j, c) in ess.lift[k].iter().enumerate() {
            if !c.is_zero() {
                coeffs[j] = &coeffs[j] + &p.scale(c);
            }
        }
    }
    Derivation::from_parts_unchecked(coeffs)
}

/// Compute a minimal homogeneous generating set of `D(A)` degree by degree.
///
/// At degree `d`, new generators number `dim D_d - dim (S · earlier)_d` and are
/// taken from the kernel basis in elimination order.
pub fn degree_sequence(a: &Arrangement, opts: DegreeOptions) -> DegreeSequence {
    let ess = a.essentialize();
    let r = ess.essential.dim();
    let engine = AdaptedEngine::new(&ess);
    let cap = opts.max_degree.unwrap_or_else(|| default_cap(a));
    let bound = regularity_bound(a);
    let stop = if opts.regularity_bound { cap.min(bound) } else { cap };
    let mut found: Vec<Found> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut graded_dims = Vec::new();
    if r > 0 {
        for d in 1..=stop {
            let sp = Space::new(r, d);
            let ker = engine.kernel(&sp);
            graded_dims.push(ker.len());
            let mut e = Echelon::new(sp.ncols());
            for f in &found {
                engine.multiples(&f.q, f.degree, &sp, &mut e, ker.len());
            }
            let mut fresh = Vec::new();
            for v in &ker {
                if e.rank() == ker.len() {
                    break;
                }
                if e.insert(v) {
                    fresh.push(Found {
                        degree: d,
                        q: sp.to_q(v),
                    });
                }
            }
            debug_assert_eq!(e.rank(), ker.len());
            counts.push(fresh.len());
            found.extend(fresh);
        }
    }
    let searched = if r > 0 { stop } else { 0 };
    let last_two = counts.len() >= 2 && counts[counts.len() - 1] > 0 && counts[counts.len() - 2] > 0;
    let essential_generators: Vec<Derivation> = found.iter().map(|f| essential_derivation(r, &f.q)).collect();
    let generators = essential_generators.iter().map(|t| lift(a, &ess, t)).collect();
    DegreeSequence {
        degrees: found.iter().map(|f| f.degree).collect(),
        generators,
        essential_generators,
        center_dim: ess.center.len(),
        center_generators: ess.center.iter().map(|v| Derivation::constant(v)).collect(),
        graded_dims,
        max_degree_searched: searched,
        cap,
        truncated: r > 0 && searched == cap && cap < bound && last_two,
        complete: cap >= bound,
    }
}

/// For one generator: the dimension of its degree piece with and without it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityEntry {
    pub index: usize,
    pub degree: u32,
    pub full_dim: usize,
    pub dim_without: usize,
}

impl MinimalityEntry {
    pub fn needed(&self) -> bool {
        self.dim_without < self.full_dim
    }
}

/// Drop each generator in turn and measure the span it leaves at its own degree.
pub fn minimality_report(a: &Arrangement, seq: &DegreeSequence) -> Vec<MinimalityEntry> {
    let ess = a.essentialize();
    let r = ess.essential.dim();
    let engine = AdaptedEngine::new(&ess);
    let qs: Vec<Vec<MultiPoly>> = seq
        .essential_generators
        .iter()
        .map(|g| {
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, p)| p.div_exact(&MultiPoly::var(r, k)).expect("p_k is divisible by y_k"))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (i, &d) in seq.degrees.iter().enumerate() {
        let sp = Space::new(r, d);
        let full_dim = seq.graded_dims[d as usize - 1];
        let mut e = Echelon::new(sp.ncols());
        for (j, q) in qs.iter().enumerate() {
            if j != i && seq.degrees[j] <= d {
                engine.multiples(q, seq.degrees[j], &sp, &mut e, full_dim);
            }
        }
        out.push(MinimalityEntry {
            index: i,
            degree: d,
            full_dim,
            dim_without: e.rank(),
        });
    }
    out
}
