//! Sparse exact elimination for the large graded systems.
//!
//! Vectors are sorted `(column, value)` lists. An [`Echelon`] holds rows with
//! leading coefficient 1 at distinct pivot columns, kept fully reduced against
//! each other, so it is the reduced row echelon form of everything inserted.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::rational::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Scratch space for reducing one vector against an echelon basis.
struct Workspace {
    acc: Vec<Rational>,
    touched: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
    list: Vec<usize>,
}

impl Workspace {
    fn new(ncols: usize) -> Self {
        Workspace {
            acc: vec![Rational::zero(); ncols],
            touched: vec![false; ncols],
            heap: BinaryHeap::new(),
            list: Vec::new(),
        }
    }

    fn touch(&mut self, c: usize) {
        if !self.touched[c] {
            self.touched[c] = true;
            self.heap.push(Reverse(c));
            self.list.push(c);
        }
    }

    fn load(&mut self, v: &SparseVec) {
        for (c, x) in v {
            self.touch(*c);
            self.acc[*c] += x;
        }
    }

    fn axpy(&mut self, f: &Rational, row: &SparseVec) {
        for (c, x) in row {
            self.touch(*c);
            let t = &self.acc[*c] - &(f * x);
            self.acc[*c] = t;
        }
    }

    /// Drain into a sorted sparse vector and reset.
    fn drain(&mut self) -> SparseVec {
        self.list.sort_unstable();
        let mut out = Vec::new();
        for &c in &self.list {
            self.touched[c] = false;
            let v = std::mem::take(&mut self.acc[c]);
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.list.clear();
        self.heap.clear();
        out
    }
}

/// Reduced row echelon basis of a growing subspace of `Q^ncols`.
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    ws: Workspace,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            ws: Workspace::new(ncols),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        self.ws.load(v);
        while let Some(Reverse(c)) = self.ws.heap.pop() {
            if let Some(r) = self.pivot_row[c] {
                if !self.ws.acc[c].is_zero() {
                    let f = self.ws.acc[c].clone();
                    // the pivot row has a 1 at c, so this clears it exactly
                    let row = std::mem::take(&mut self.rows[r]);
                    self.ws.axpy(&f, &row);
                    self.rows[r] = row;
                }
            }
        }
        self.ws.drain()
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let res = self.reduce(v);
        self.insert_reduced(res)
    }

    /// Insert a vector already reduced against this basis.
    pub fn insert_reduced(&mut self, mut res: SparseVec) -> bool {
        let Some(&(pc, ref lead)) = res.first() else {
            return false;
        };
        let inv = lead.recip();
        if !inv.is_one() {
            for (_, x) in res.iter_mut() {
                *x = &*x * &inv;
            }
        }
        // keep earlier rows reduced against the new pivot
        for r in 0..self.rows.len() {
            let row = &self.rows[r];
            if let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) {
                let f = row[k].1.clone();
                let updated = sub_scaled(row, &f, &res);
                self.rows[r] = updated;
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(res);
        true
    }

    /// Basis of `{x : row . x = 0 for every stored row}`, one vector per
    /// non-pivot column in ascending order.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = Vec::new();
        let mut slot = vec![usize::MAX; self.ncols];
        for (c, s) in slot.iter_mut().enumerate() {
            if self.pivot_row[c].is_none() {
                *s = out.len();
                out.push(vec![(c, Rational::one())]);
            }
        }
        for row in &self.rows {
            let pc = row[0].0;
            for (c, x) in row.iter().skip(1) {
                // entries past the leading one sit in free columns (rows are fully reduced)
                out[slot[*c]].push((pc, -x));
            }
        }
        for v in out.iter_mut() {
            v.sort_unstable_by_key(|e| e.0);
        }
        out
    }
}

/// `a - f * b` for sorted sparse vectors.
pub fn sub_scaled(a: &SparseVec, f: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Right null space of the matrix whose rows are `rows`.
pub fn sparse_kernel(ncols: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.null_space()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        sparse_from_dense(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&sv(&[1, 2, 3])));
        assert!(e.insert(&sv(&[2, 4, 7])));
        assert!(!e.insert(&sv(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&sv(&[0, 0, 5])).is_empty());
    }

    #[test]
    fn kernel_matches_hand_computation() {
        let k = sparse_kernel(3, &[sv(&[1, 1, 0]), sv(&[0, 1, 1])]);
        assert_eq!(k, vec![sv(&[1, -1, 1])]);
    }

    #[test]
    fn rows_stay_fully_reduced() {
        let mut e = Echelon::new(4);
        e.insert(&sv(&[0, 1, 1, 0]));
        e.insert(&sv(&[1, 1, 0, 1]));
        e.insert(&sv(&[0, 0, 1, 1]));
        for row in e.rows() {
            for (c, _) in row.iter().skip(1) {
                assert!(!e.is_pivot(*c));
            }
        }
    }
}
