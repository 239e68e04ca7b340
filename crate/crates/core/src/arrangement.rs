//! Central hyperplane arrangements over Q.

use std::fmt;

use crate::exactmath::{rref_rows, subspace_dim, MultiPoly, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("a hyperplane needs a nonzero linear form")]
    ZeroForm,
    #[error("form has {got} coefficients but the ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hyperplane {0} is listed twice")]
    Duplicate(String),
    #[error("hyperplane {0} is not in the arrangement")]
    NotAMember(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A linear hyperplane `ker(alpha)`, with `alpha` scaled so its first nonzero
/// coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, ArrangementError> {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(ArrangementError::ZeroForm)?;
        if !lead.is_one() {
            let inv = lead.recip();
            for c in coeffs.iter_mut() {
                *c = &*c * &inv;
            }
        }
        Ok(Hyperplane { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, ArrangementError> {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn form(&self) -> MultiPoly {
        MultiPoly::linear(&self.coeffs)
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Whether the hyperplane contains the subspace cut out by `equations`.
    pub fn contains_flat(&self, equations: &[Vec<Rational>]) -> bool {
        let mut rows = equations.to_vec();
        let before = subspace_dim(&rows);
        rows.push(self.coeffs.clone());
        subspace_dim(&rows) == before
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({})", self.form())
    }
}

/// Rank of the span of the given hyperplanes' forms.
pub fn rank_of(hs: &[&Hyperplane]) -> usize {
    let rows: Vec<Vec<Rational>> = hs.iter().map(|h| h.coeffs.clone()).collect();
    subspace_dim(&rows)
}

/// An ordered list of distinct hyperplanes in `K^dim`. Equality ignores order.
#[derive(Clone)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.len() == other.len() && self.hyperplanes.iter().all(|h| other.contains(h))
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        let mut a = Arrangement {
            dim,
            hyperplanes: Vec::with_capacity(hyperplanes.len()),
        };
        for h in hyperplanes {
            a.push(h)?;
        }
        Ok(a)
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn from_int_rows(dim: usize, rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let hs = rows
            .iter()
            .map(|r| Hyperplane::from_ints(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, hs)
    }

    fn push(&mut self, h: Hyperplane) -> Result<(), ArrangementError> {
        if h.dim() != self.dim {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.dim,
                got: h.dim(),
            });
        }
        if self.contains(&h) {
            return Err(ArrangementError::Duplicate(h.to_string()));
        }
        self.hyperplanes.push(h);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn get(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn coefficient_rows(&self) -> Vec<Vec<Rational>> {
        self.hyperplanes.iter().map(|h| h.coeffs.clone()).collect()
    }

    /// `Q(A)`, the product of the forms.
    pub fn defining_poly(&self) -> MultiPoly {
        self.hyperplanes
            .iter()
            .fold(MultiPoly::one(self.dim), |acc, h| &acc * &h.form())
    }

    pub fn rank(&self) -> usize {
        subspace_dim(&self.coefficient_rows())
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Rank of the hyperplanes with the given indices.
    pub fn rank_of_indices(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| self.hyperplanes[i].coeffs.clone()).collect();
        subspace_dim(&rows)
    }

    pub fn delete(&self, h: &Hyperplane) -> Result<Arrangement, ArrangementError> {
        let i = self
            .index_of(h)
            .ok_or_else(|| ArrangementError::NotAMember(h.to_string()))?;
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(i);
        Ok(Arrangement {
            dim: self.dim,
            hyperplanes,
        })
    }

    /// `A ∪ {h}` with `h` appended.
    pub fn add(&self, h: &Hyperplane) -> Result<Arrangement, ArrangementError> {
        let mut a = self.clone();
        a.push(h.clone())?;
        Ok(a)
    }

    pub fn subarrangement(&self, idx: &[usize]) -> Arrangement {
        Arrangement {
            dim: self.dim,
            hyperplanes: idx.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
        }
    }

    /// Number of distinct intersections `H ∩ h` for `H` in the arrangement other
    /// than `h`, that is `|(A ∪ {h})^h|`.
    pub fn restriction_size(&self, h: &Hyperplane) -> usize {
        // H ∩ h is determined by the row space of {h, H}; its RREF is canonical
        let mut seen: Vec<Vec<Vec<Rational>>> = Vec::new();
        for g in self.hyperplanes.iter().filter(|g| *g != h) {
            let key = rref_rows(self.dim, vec![h.coeffs.clone(), g.coeffs.clone()]);
            if !seen.contains(&key) {
                seen.push(key);
            }
        }
        seen.len()
    }

    /// Rewrite in coordinates `y_k = alpha_{basis[k]}` on the quotient by the center.
    pub fn essentialize(&self) -> Essentialization {
        let mut basis = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            rows.push(h.coeffs.clone());
            if subspace_dim(&rows) == basis.len() + 1 {
                basis.push(i);
            } else {
                rows.pop();
            }
        }
        let r = basis.len();
        let b = RatMatrix::from_rows(self.dim, &rows);
        let center = b.kernel_basis();
        let lift = right_inverse(&rows, self.dim);
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| {
                let c: Vec<Rational> = lift.iter().map(|v| h.eval(v)).collect();
                Hyperplane::new(c).expect("a nonzero form stays nonzero on the quotient")
            })
            .collect();
        Essentialization {
            essential: Arrangement { dim: r, hyperplanes },
            basis,
            lift,
            center,
        }
    }

    /// Parse the text format: a `dim n` header, then one row of `n` rationals per
    /// hyperplane; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Arrangement, ArrangementError> {
        let mut dim: Option<usize> = None;
        let mut arr: Option<Arrangement> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let toks = tokens(line);
            if toks.is_empty() {
                continue;
            }
            let perr = |column: usize, message: String| ArrangementError::Parse {
                line: ln + 1,
                column,
                message,
            };
            match dim {
                None => {
                    if toks[0].1 != "dim" || toks.len() != 2 {
                        return Err(perr(toks[0].0, "expected header `dim <n>`".into()));
                    }
                    let n: usize = toks[1]
                        .1
                        .parse()
                        .map_err(|_| perr(toks[1].0, format!("bad dimension `{}`", toks[1].1)))?;
                    if n == 0 {
                        return Err(perr(toks[1].0, "dimension must be positive".into()));
                    }
                    dim = Some(n);
                    arr = Some(Arrangement::empty(n));
                }
                Some(n) => {
                    if toks.len() != n {
                        return Err(perr(
                            toks[0].0,
                            format!("expected {n} coefficients, found {}", toks.len()),
                        ));
                    }
                    let mut coeffs = Vec::with_capacity(n);
                    for (col, t) in &toks {
                        coeffs.push(t.parse::<Rational>().map_err(|e| perr(*col, e.to_string()))?);
                    }
                    let h = Hyperplane::new(coeffs).map_err(|e| perr(toks[0].0, e.to_string()))?;
                    let a = arr.as_mut().expect("header seen");
                    a.push(h).map_err(|e| perr(toks[0].0, e.to_string()))?;
                }
            }
        }
        arr.ok_or(ArrangementError::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `dim <n>` header".into(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for h in &self.hyperplanes {
            let row: Vec<String> = h.coeffs.iter().map(|c| c.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.hyperplanes).finish()
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

/// Vectors `v_k` with `rows[j] . v_k = delta_jk`; `rows` must be independent.
fn right_inverse(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let r = rows.len();
    // row reduce [B | I]; the pivot columns of B then carry B_P^{-1}
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    let red = rref_rows(dim + r, aug);
    let mut out = vec![vec![Rational::zero(); dim]; r];
    for row in &red {
        let pc = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
        assert!(pc < dim, "rows are independent");
        for (k, v) in out.iter_mut().enumerate() {
            v[pc] = row[dim + k].clone();
        }
    }
    out
}

/// An arrangement rewritten on `K^ℓ / center`.
#[derive(Clone, Debug)]
pub struct Essentialization {
    /// Same hyperplanes, same order, in `r = rank` coordinates; hyperplane
    /// `basis[k]` becomes the coordinate hyperplane `y_k`.
    pub essential: Arrangement,
    pub basis: Vec<usize>,
    /// `lift[k]` in `K^ℓ` with `alpha_{basis[j]}(lift[k]) = delta_jk`.
    pub lift: Vec<Vec<Rational>>,
    /// Basis of the common kernel of all forms.
    pub center: Vec<Vec<Rational>>,
}

impl Essentialization {
    /// The linear forms `y_k = alpha_{basis[k]}` as polynomials in `x`.
    pub fn coordinate_forms(&self, original: &Arrangement) -> Vec<MultiPoly> {
        self.basis.iter().map(|&i| original.get(i).form()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_plus() -> Arrangement {
        Arrangement::from_int_rows(
            3,
            &[&[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[1, 0, 1], &[1, -1, 0], &[1, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn canonical_scaling() {
        let h = Hyperplane::from_ints(&[0, -2, 4]).unwrap();
        assert_eq!(h.coeffs()[1], Rational::one());
        assert_eq!(h, Hyperplane::from_ints(&[0, 1, -2]).unwrap());
        assert!(Hyperplane::from_ints(&[0, 0]).is_err());
    }

    #[test]
    fn defining_polynomials() {
        let b = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let x = |i| MultiPoly::var(3, i);
        assert_eq!(b.defining_poly(), &(&x(0) * &x(1)) * &x(2));
        assert_eq!(Arrangement::empty(3).defining_poly(), MultiPoly::one(3));
        let q = star_plus().defining_poly();
        assert_eq!(q.degree(), Some(6));
        let expect = [
            &x(1),
            &x(2),
            &(&x(0) - &x(2)),
            &(&x(0) + &x(2)),
            &(&x(0) - &x(1)),
            &(&x(0) + &x(1)),
        ]
        .into_iter()
        .fold(MultiPoly::one(3), |a, f| &a * f);
        assert_eq!(q, expect);
    }

    #[test]
    fn essential_checks() {
        assert!(Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
            .unwrap()
            .is_essential());
        assert!(!Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0]])
            .unwrap()
            .is_essential());
        assert!(star_plus().is_essential());
    }

    #[test]
    fn deletion() {
        let a =
            Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, -1], &[0, 1, -1], &[1, -1, 0]]).unwrap();
        let h = Hyperplane::from_ints(&[1, -1, 0]).unwrap();
        let ap = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap();
        assert_eq!(a.delete(&h).unwrap(), ap);
        assert!(ap.delete(&h).is_err());
        assert_eq!(ap.delete(ap.get(0)).unwrap().len(), 3);
    }

    #[test]
    fn restriction_sizes() {
        let ap = Arrangement::from_int_rows(
            3,
            &[
                &[1, 0, 0],
                &[1, 1, 0],
                &[1, -1, 0],
                &[1, 2, 0],
                &[1, -2, 0],
                &[0, 1, -1],
                &[0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(ap.restriction_size(&Hyperplane::from_ints(&[0, 1, 0]).unwrap()), 2);
        let b = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(b.restriction_size(&Hyperplane::from_ints(&[1, 2, 3]).unwrap()), 3);
        let a24 = Arrangement::from_int_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap();
        assert_eq!(a24.restriction_size(&Hyperplane::from_ints(&[1, -1, 0]).unwrap()), 2);
    }

    #[test]
    fn restriction_size_ignores_scaling() {
        let a = star_plus();
        let h1 = Hyperplane::from_ints(&[1, 2, 3]).unwrap();
        let h2 = Hyperplane::from_ints(&[-3, -6, -9]).unwrap();
        assert_eq!(a.restriction_size(&h1), a.restriction_size(&h2));
    }

    #[test]
    fn parser_accepts_comments_and_rationals() {
        let a = Arrangement::parse("# star\ndim 3\n0 1 0 # y\n1 1/2 0\n\n1 0 -0.5\n").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.get(1).coeffs()[1], Rational::new(1, 2));
        assert_eq!(Arrangement::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn parser_reports_positions() {
        match Arrangement::parse("dim 3\n1 0 0\n0 1 q\n") {
            Err(ArrangementError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Arrangement::parse("1 0 0\n"),
            Err(ArrangementError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Arrangement::parse("dim 2\n1 0\n2 0\n"),
            Err(ArrangementError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Arrangement::parse("dim 2\n1 0 0\n"),
            Err(ArrangementError::Parse { line: 2, .. })
        ));
        assert!(Arrangement::parse("").is_err());
    }

    #[test]
    fn essentialization_of_graphic_triangle() {
        let a = Arrangement::from_int_rows(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap();
        let e = a.essentialize();
        assert_eq!(e.essential.dim(), 2);
        assert_eq!(e.basis, vec![0, 1]);
        assert_eq!(e.center.len(), 1);
        assert_eq!(e.essential.get(0), &Hyperplane::from_ints(&[1, 0]).unwrap());
        assert_eq!(e.essential.get(2), &Hyperplane::from_ints(&[1, -1]).unwrap());
        for (k, v) in e.lift.iter().enumerate() {
            for (j, &b) in e.basis.iter().enumerate() {
                let want = if j == k { Rational::one() } else { Rational::zero() };
                assert_eq!(a.get(b).eval(v), want);
            }
        }
    }
}
