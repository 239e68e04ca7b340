//! The intersection lattice, its Möbius function and characteristic polynomial.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::{rref_rows, Rational, UniPoly};

/// A flat `X`, stored by the RREF of the forms vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub equations: Vec<Vec<Rational>>,
    pub codim: usize,
    /// Indices of the hyperplanes containing `X`, ascending.
    pub members: Vec<usize>,
    pub moebius: BigInt,
}

impl Flat {
    /// Whether `v` lies in the row space of the equations.
    pub fn in_row_space(&self, v: &[Rational]) -> bool {
        in_rref_span(&self.equations, v)
    }

    /// Whether the hyperplane contains this flat.
    pub fn inside(&self, h: &Hyperplane) -> bool {
        self.in_row_space(h.coeffs())
    }

    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

fn in_rref_span(rref: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut r = v.to_vec();
    for row in rref {
        let pc = row.iter().position(|c| !c.is_zero()).expect("rref rows are nonzero");
        if !r[pc].is_zero() {
            let f = r[pc].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    r.iter().all(Rational::is_zero)
}

/// `L(A)`, flats sorted by codimension and then by member list.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    num_hyperplanes: usize,
    flats: Vec<Flat>,
    level_start: Vec<usize>,
}

impl Lattice {
    pub fn build(a: &Arrangement) -> Lattice {
        let dim = a.dim();
        let n = a.len();
        let bottom = Flat {
            equations: Vec::new(),
            codim: 0,
            members: Vec::new(),
            moebius: BigInt::one(),
        };
        let mut levels: Vec<Vec<Flat>> = vec![vec![bottom]];
        loop {
            let prev = levels.last().unwrap();
            let mut next: HashMap<Vec<usize>, Flat> = HashMap::new();
            for x in prev {
                for (i, h) in a.hyperplanes().iter().enumerate() {
                    if x.members.binary_search(&i).is_ok() {
                        continue;
                    }
                    let mut rows = x.equations.clone();
                    rows.push(h.coeffs().to_vec());
                    let equations = rref_rows(dim, rows);
                    let members: Vec<usize> = (0..n)
                        .filter(|&j| in_rref_span(&equations, a.get(j).coeffs()))
                        .collect();
                    next.entry(members.clone()).or_insert_with(|| Flat {
                        codim: equations.len(),
                        equations,
                        members,
                        moebius: BigInt::zero(),
                    });
                }
            }
            if next.is_empty() {
                break;
            }
            let mut level: Vec<Flat> = next.into_values().collect();
            level.sort_by(|p, q| p.members.cmp(&q.members));
            levels.push(level);
        }
        let mut flats = Vec::new();
        let mut level_start = Vec::new();
        for level in levels {
            level_start.push(flats.len());
            flats.extend(level);
        }
        level_start.push(flats.len());
        let mut l = Lattice {
            dim,
            num_hyperplanes: n,
            flats,
            level_start,
        };
        l.compute_moebius();
        l
    }

    /// `mu(X) = -sum_{Y < X} mu(Y)`, where `Y < X` means `Y` strictly contains `X`.
    fn compute_moebius(&mut self) {
        let words = self.num_hyperplanes.div_ceil(64).max(1);
        let masks: Vec<Vec<u64>> = self
            .flats
            .iter()
            .map(|f| {
                let mut m = vec![0u64; words];
                for &i in &f.members {
                    m[i / 64] |= 1 << (i % 64);
                }
                m
            })
            .collect();
        for x in 1..self.flats.len() {
            let cx = self.flats[x].codim;
            let mut s = BigInt::zero();
            for y in 0..self.level_start[cx] {
                let below = masks[y].iter().zip(&masks[x]).all(|(a, b)| a & !b == 0);
                if below {
                    s += &self.flats[y].moebius;
                }
            }
            self.flats[x].moebius = -s;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Rank of the arrangement (largest codimension).
    pub fn rank(&self) -> usize {
        self.level_start.len() - 2
    }

    pub fn level(&self, codim: usize) -> &[Flat] {
        if codim + 1 >= self.level_start.len() {
            return &[];
        }
        &self.flats[self.level_start[codim]..self.level_start[codim + 1]]
    }

    pub fn codim2_flats(&self) -> &[Flat] {
        self.level(2)
    }

    /// `chi(A, t) = sum mu(X) t^{dim X}`.
    pub fn char_poly(&self) -> UniPoly {
        let mut c = vec![BigInt::zero(); self.dim + 1];
        for f in &self.flats {
            c[self.dim - f.codim] += &f.moebius;
        }
        UniPoly::from_coeffs(c)
    }
}

pub fn char_poly(a: &Arrangement) -> UniPoly {
    Lattice::build(a).char_poly()
}
