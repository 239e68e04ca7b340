//! Solvable subarrangements, hypersolvable filtrations, hyperexponents and the
//! quadratic Orlik-Solomon Poincaré polynomial.
//!
//! A filtration starts from a single hyperplane `A_1`; the definition leaves
//! `A_0 ⊂ A_1` unconstrained, and without this every arrangement would be
//! hypersolvable with `k = 1`. Condition (3) of solvability is checked for
//! distinct `a, b, c` in the complement, the only triples on which `f` is defined.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::arrangement::Arrangement;
use crate::exactmath::{binomial, Echelon, Rational, SparseVec, UniPoly};
use crate::logder::{degree_sequence, DegreeOptions, LogderError};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A violated condition of solvability, with the offending hyperplane indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvabilityFailure {
    /// `B` is not contained in `A`.
    NotSubset,
    /// `rank(alpha, beta, a) != 3`.
    Condition1 { alpha: usize, beta: usize, a: usize },
    /// No `alpha` in `B` with `rank(a, b, alpha) = 2`.
    Condition2 { a: usize, b: usize },
    /// `rank(f(a,b), f(a,c), f(b,c)) = 3`.
    Condition3 { a: usize, b: usize, c: usize },
}

/// Whether the hyperplanes of `a` indexed by `b` form a solvable subarrangement.
pub fn is_solvable_in(a: &Arrangement, b: &[usize]) -> Result<(), SolvabilityFailure> {
    if b.iter().any(|&i| i >= a.len()) {
        return Err(SolvabilityFailure::NotSubset);
    }
    let rank = |idx: &[usize]| a.rank_of_indices(idx);
    let comp: Vec<usize> = (0..a.len()).filter(|i| !b.contains(i)).collect();
    for (x, &alpha) in b.iter().enumerate() {
        for &beta in &b[x + 1..] {
            for &h in &comp {
                if rank(&[alpha, beta, h]) != 3 {
                    return Err(SolvabilityFailure::Condition1 { alpha, beta, a: h });
                }
            }
        }
    }
    let m = comp.len();
    let mut f = vec![vec![usize::MAX; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let alpha = b
                .iter()
                .copied()
                .find(|&al| rank(&[comp[i], comp[j], al]) == 2)
                .ok_or(SolvabilityFailure::Condition2 { a: comp[i], b: comp[j] })?;
            f[i][j] = alpha;
            f[j][i] = alpha;
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let r = rank(&[f[i][j], f[i][k], f[j][k]]);
                if r == 3 {
                    return Err(SolvabilityFailure::Condition3 {
                        a: comp[i],
                        b: comp[j],
                        c: comp[k],
                    });
                }
            }
        }
    }
    Ok(())
}

/// `∅ ⊂ A_1 ⊂ ... ⊂ A_k = A` as ascending index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvableFiltration {
    pub chain: Vec<Vec<usize>>,
    pub steps: Vec<usize>,
}

impl SolvableFiltration {
    pub fn k(&self) -> usize {
        self.chain.len()
    }

    /// Hyperexponents, sorted.
    pub fn hyperexponents(&self) -> Vec<usize> {
        let mut v = self.steps.clone();
        v.sort_unstable();
        v
    }

    /// `rho(A) = max b_i`.
    pub fn rho(&self) -> usize {
        self.steps.iter().copied().max().unwrap_or(0)
    }

    /// Check that each level is solvable in the next.
    pub fn verify(&self, a: &Arrangement) -> bool {
        !self.chain.is_empty()
            && self.chain[0].len() == 1
            && self.chain.last().map(Vec::len) == Some(a.len())
            && self.chain.windows(2).all(|w| {
                let sub = a.subarrangement(&w[1]);
                let pos: Vec<usize> = w[0].iter().map(|i| w[1].binary_search(i).expect("nested")).collect();
                w[0].len() < w[1].len() && is_solvable_in(&sub, &pos).is_ok()
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationOutcome {
    Found(SolvableFiltration),
    NotHypersolvable,
    BudgetExhausted,
}

impl FiltrationOutcome {
    pub fn filtration(&self) -> Option<&SolvableFiltration> {
        match self {
            FiltrationOutcome::Found(f) => Some(f),
            _ => None,
        }
    }
}

struct Search<'a> {
    a: &'a Arrangement,
    nodes: u64,
    budget: u64,
    dead: HashSet<u64>,
}

fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

impl Search<'_> {
    /// Extend the chain ending in `cur`; `Ok(false)` means no completion exists.
    fn extend(&mut self, chain: &mut Vec<u64>, full: u64) -> Result<bool, ()> {
        let cur = *chain.last().expect("nonempty");
        if cur == full {
            return Ok(true);
        }
        if self.dead.contains(&cur) {
            return Ok(false);
        }
        let rest = indices(full & !cur);
        // supersets of cur: by number of added hyperplanes descending, then lexicographic
        let mut extra: Vec<u64> = (1u64..1 << rest.len())
            .map(|s| indices(s).iter().fold(0u64, |m, &i| m | 1 << rest[i]))
            .collect();
        extra.sort_by(|x, y| {
            y.count_ones()
                .cmp(&x.count_ones())
                .then_with(|| indices(*x).cmp(&indices(*y)))
        });
        for add in extra {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            let next = cur | add;
            if self.dead.contains(&next) {
                continue;
            }
            let members = indices(next);
            let sub = self.a.subarrangement(&members);
            let pos: Vec<usize> = indices(cur)
                .iter()
                .map(|i| members.binary_search(i).expect("nested"))
                .collect();
            if is_solvable_in(&sub, &pos).is_ok() {
                chain.push(next);
                if self.extend(chain, full)? {
                    return Ok(true);
                }
                chain.pop();
            }
        }
        self.dead.insert(cur);
        Ok(false)
    }
}

/// Backtracking search for a solvable filtration. Starting hyperplanes and
/// extensions are tried in a fixed order; exhausting the budget is reported
/// separately from a negative answer.
pub fn find_filtration(a: &Arrangement, budget: u64) -> FiltrationOutcome {
    find_filtration_from(a, 0..a.len(), budget)
}

/// As [`find_filtration`], trying only the given first hyperplanes.
pub fn find_filtration_from(
    a: &Arrangement,
    firsts: impl IntoIterator<Item = usize>,
    budget: u64,
) -> FiltrationOutcome {
    assert!(a.len() < 64, "at most 63 hyperplanes");
    if a.is_empty() {
        return FiltrationOutcome::NotHypersolvable;
    }
    let full = (1u64 << a.len()) - 1;
    let mut s = Search {
        a,
        nodes: 0,
        budget,
        dead: HashSet::new(),
    };
    for first in firsts {
        let mut chain = vec![1u64 << first];
        match s.extend(&mut chain, full) {
            Ok(true) => {
                let chain: Vec<Vec<usize>> = chain.into_iter().map(indices).collect();
                let mut steps = vec![1];
                steps.extend(chain.windows(2).map(|w| w[1].len() - w[0].len()));
                return FiltrationOutcome::Found(SolvableFiltration { chain, steps });
            }
            Ok(false) => {}
            Err(()) => return FiltrationOutcome::BudgetExhausted,
        }
    }
    FiltrationOutcome::NotHypersolvable
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypersolvableError {
    #[error("the arrangement is not hypersolvable")]
    NotHypersolvable,
    #[error("filtration search exceeded its budget")]
    BudgetExhausted,
    #[error("direct computation needs at most {max} hyperplanes, got {got}")]
    TooLarge { max: usize, got: usize },
    #[error("filtrations disagree: {0:?} vs {1:?}")]
    Inconsistent(Vec<usize>, Vec<usize>),
    #[error(transparent)]
    Logder(#[from] LogderError),
}

fn require(a: &Arrangement, budget: u64) -> Result<SolvableFiltration, HypersolvableError> {
    match find_filtration(a, budget) {
        FiltrationOutcome::Found(f) => Ok(f),
        FiltrationOutcome::NotHypersolvable => Err(HypersolvableError::NotHypersolvable),
        FiltrationOutcome::BudgetExhausted => Err(HypersolvableError::BudgetExhausted),
    }
}

/// Hyperexponents, sorted. A second filtration with a different first
/// hyperplane is sought and, if found, must give the same multiset.
pub fn hyperexponents(a: &Arrangement, budget: u64) -> Result<Vec<usize>, HypersolvableError> {
    let f = require(a, budget)?;
    let first = f.chain[0][0];
    if let FiltrationOutcome::Found(g) = find_filtration_from(a, (0..a.len()).filter(|&i| i != first), budget) {
        if g.hyperexponents() != f.hyperexponents() {
            return Err(HypersolvableError::Inconsistent(f.hyperexponents(), g.hyperexponents()));
        }
    }
    Ok(f.hyperexponents())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpMethod {
    Filtration,
    Direct,
}

pub const DIRECT_QP_LIMIT: usize = 12;

pub fn quadratic_poincare(a: &Arrangement, method: QpMethod, budget: u64) -> Result<UniPoly, HypersolvableError> {
    match method {
        QpMethod::Filtration => {
            let f = require(a, budget)?;
            let bs: Vec<i64> = f.steps.iter().map(|&b| b as i64).collect();
            Ok(UniPoly::from_one_plus(&bs))
        }
        QpMethod::Direct => qp_direct(a),
    }
}

/// `dim QOS(A)^p = C(n, p) - dim QI(A)_p`, with `QI(A)_p` spanned by the
/// quadratic relations times all monomials of degree `p - 2`.
fn qp_direct(a: &Arrangement) -> Result<UniPoly, HypersolvableError> {
    let n = a.len();
    if n > DIRECT_QP_LIMIT {
        return Err(HypersolvableError::TooLarge {
            max: DIRECT_QP_LIMIT,
            got: n,
        });
    }
    // relations e_i e_j - e_i e_k + e_j e_k for dependent triples i < j < k
    let mut rels: Vec<[(u32, i64); 3]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a.rank_of_indices(&[i, j, k]) == 2 {
                    rels.push([(1 << i | 1 << j, 1), (1 << i | 1 << k, -1), (1 << j | 1 << k, 1)]);
                }
            }
        }
    }
    let mut coeffs = vec![BigInt::from(1)];
    for p in 1..=n {
        let mons: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == p).collect();
        let total = binomial(n, p);
        let mut ech = Echelon::new(total);
        if p >= 2 {
            let lower: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == p - 2).collect();
            'fill: for r in &rels {
                for &m in &lower {
                    let mut v: Vec<(usize, Rational)> = Vec::new();
                    for &(pair, c) in r {
                        if pair & m != 0 {
                            continue;
                        }
                        let s = wedge_sign(pair, m);
                        let col = mons.binary_search(&(pair | m)).expect("degree p monomial");
                        v.push((col, Rational::from_int(c * s)));
                    }
                    v.sort_by_key(|e| e.0);
                    let v: SparseVec = v;
                    if !v.is_empty() {
                        ech.insert(&v);
                    }
                    if ech.rank() == total {
                        break 'fill;
                    }
                }
            }
        }
        let dim = total - ech.rank();
        if dim == 0 {
            break;
        }
        coeffs.push(BigInt::from(dim));
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Sign of `e_i e_j ∧ e_m` in the sorted monomial basis, for `pair = {i < j}`.
fn wedge_sign(pair: u32, m: u32) -> i64 {
    let i = pair.trailing_zeros();
    let j = 31 - pair.leading_zeros();
    let below = |x: u32, b: u32| (x & ((1u32 << b) - 1)).count_ones();
    let sj = below(m, j);
    let si = below(m | 1 << j, i);
    if (si + sj) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Steps of a filtration of length `rank(A)`, which are the exponents.
pub fn supersolvable_exponents(a: &Arrangement, budget: u64) -> Result<Option<Vec<usize>>, HypersolvableError> {
    let f = require(a, budget)?;
    // all filtrations share k, the degree of QP
    Ok((f.k() == a.rank()).then(|| f.steps.clone()))
}

/// `|A_{i+1}^H| = |A_i|` for every step and every `H` added at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionStep {
    pub level: usize,
    pub hyperplane: usize,
    pub restriction: usize,
    pub lower_size: usize,
}

pub fn restriction_identity(a: &Arrangement, f: &SolvableFiltration) -> Vec<RestrictionStep> {
    let mut out = Vec::new();
    for (level, w) in f.chain.windows(2).enumerate() {
        let upper = a.subarrangement(&w[1]);
        for &h in w[1].iter().filter(|i| !w[0].contains(i)) {
            out.push(RestrictionStep {
                level: level + 1,
                hyperplane: h,
                restriction: upper.restriction_size(a.get(h)),
                lower_size: w[0].len(),
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HypboundReport {
    pub filtration: SolvableFiltration,
    pub rho: usize,
    /// Index of the deleted hyperplane `H ∈ A \ A_{k-1}`.
    pub deleted: usize,
    pub d_full: u32,
    pub d_deleted: u32,
    pub slack_full: i64,
    pub slack_deleted: i64,
}

impl HypboundReport {
    pub fn holds(&self) -> bool {
        self.slack_full >= 0 && self.slack_deleted >= 0
    }
}

/// `d_A >= rho(A) - 1` and `d_{A \ H} >= rho(A) - 1` for `H` in the top step.
pub fn check_hypbound(a: &Arrangement, opts: DegreeOptions, budget: u64) -> Result<HypboundReport, HypersolvableError> {
    let f = require(a, budget)?;
    let rho = f.rho();
    let top = f.chain.last().expect("nonempty");
    let below: &[usize] = if f.k() >= 2 { &f.chain[f.k() - 2] } else { &[] };
    let deleted = *top.iter().find(|i| !below.contains(i)).expect("strict step");
    let seq = degree_sequence(a, opts);
    let a_prime = a.delete(a.get(deleted)).map_err(LogderError::from)?;
    let seq_prime = degree_sequence(&a_prime, opts);
    if !seq.complete || !seq_prime.complete {
        return Err(LogderError::Incomplete.into());
    }
    let d_full = seq.d_max().unwrap_or(0);
    let d_deleted = seq_prime.d_max().unwrap_or(0);
    let bound = rho as i64 - 1;
    Ok(HypboundReport {
        rho,
        deleted,
        d_full,
        d_deleted,
        slack_full: d_full as i64 - bound,
        slack_deleted: d_deleted as i64 - bound,
        filtration: f,
    })
}
