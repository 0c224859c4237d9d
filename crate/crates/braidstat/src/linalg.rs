//! Exact sparse linear algebra over a [`Field`].
//!
//! Vectors are sorted `(index, value)` lists without zero entries. The
//! echelon structure keeps one row per pivot, where the pivot is the largest
//! index of the row, so reduction only ever introduces smaller indices.

use std::collections::BTreeMap;

use crate::scalar::{Field, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

/// Accumulates `coef * v` into a map, dropping entries that cancel.
pub fn axpy_into(field: &Field, acc: &mut BTreeMap<usize, Scalar>, coef: &Scalar, v: &[(usize, Scalar)]) {
    for (i, x) in v {
        let term = field.mul(coef, x);
        match acc.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !field.is_zero(&term) {
                    e.insert(term);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(e.get(), &term);
                if field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub fn from_map(m: BTreeMap<usize, Scalar>) -> SparseVec {
    m.into_iter().collect()
}

pub fn to_map(v: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
    v.iter().cloned().collect()
}

/// Incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    /// pivot index -> row with coefficient 1 at the pivot (stored without it)
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: &Field) -> Echelon {
        Echelon { field: field.clone(), rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    /// Adds a vector to the span; returns true when the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let f = self.field.clone();
        let mut acc = to_map(v);
        while let Some((&top, _)) = acc.iter().next_back() {
            let c = acc.remove(&top).expect("present");
            match self.rows.get(&top) {
                Some(row) => {
                    let neg = f.neg(&c);
                    axpy_into(&f, &mut acc, &neg, row);
                }
                None => {
                    let inv = f.inv(&c).expect("nonzero pivot");
                    let row: SparseVec = acc.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
                    self.rows.insert(top, row);
                    return true;
                }
            }
        }
        false
    }

    /// Normal form of `v` modulo the span: only non-pivot indices remain.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let f = &self.field;
        let mut acc = to_map(v);
        let mut out = Vec::new();
        while let Some((&top, _)) = acc.iter().next_back() {
            let c = acc.remove(&top).expect("present");
            match self.rows.get(&top) {
                Some(row) => {
                    let neg = f.neg(&c);
                    axpy_into(f, &mut acc, &neg, row);
                }
                None => out.push((top, c)),
            }
        }
        out.reverse();
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of the given vectors.
pub fn rank_of(field: &Field, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Small dense matrix helper (rows of scalars).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Dense {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Dense {
        Dense { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Dense {
        let mut m = Dense::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, field: &Field, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let mut m = Dense::zeros(field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let s = field.add(m.get(i, j), &field.mul(a, b));
                    m.set(i, j, s);
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Dense {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Dense { rows: self.cols, cols: self.rows, data }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self, field: &Field) -> Vec<SparseVec> {
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter(|&r| !field.is_zero(self.get(r, c)))
                    .map(|r| (r, self.get(r, c).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn from_columns(field: &Field, rows: usize, cols: &[SparseVec]) -> Dense {
        let mut m = Dense::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn rank(&self, field: &Field) -> usize {
        rank_of(field, &self.columns(field))
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self, field: &Field) -> Option<Dense> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Dense::identity(field, n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !field.is_zero(a.get(r, c)))?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    b.data.swap(piv * n + j, c * n + j);
                }
            }
            let inv = field.inv(a.get(c, c))?;
            for j in 0..n {
                let x = field.mul(a.get(c, j), &inv);
                a.set(c, j, x);
                let y = field.mul(b.get(c, j), &inv);
                b.set(c, j, y);
            }
            for r in 0..n {
                if r == c || field.is_zero(a.get(r, c)) {
                    continue;
                }
                let fct = a.get(r, c).clone();
                for j in 0..n {
                    let x = field.sub(a.get(r, j), &field.mul(&fct, a.get(c, j)));
                    a.set(r, j, x);
                    let y = field.sub(b.get(r, j), &field.mul(&fct, b.get(c, j)));
                    b.set(r, j, y);
                }
            }
        }
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_reduce() {
        let f = Field::rational();
        let one = f.one();
        let m1 = f.from_int(-1);
        let mut e = Echelon::new(&f);
        assert!(e.insert(&[(0, one.clone()), (2, m1.clone())]));
        assert!(e.insert(&[(1, one.clone()), (2, m1.clone())]));
        assert!(!e.insert(&[(0, one.clone()), (1, m1.clone())]));
        assert_eq!(e.rank(), 2);
        // e2 == e0 == e1 modulo the span
        assert_eq!(e.reduce(&[(2, one.clone())]), vec![(0, one.clone())]);
    }

    #[test]
    fn dense_inverse() {
        let f = Field::finite(5).unwrap();
        let mut m = Dense::zeros(&f, 2, 2);
        m.set(0, 0, f.from_int(1));
        m.set(0, 1, f.from_int(2));
        m.set(1, 0, f.from_int(3));
        m.set(1, 1, f.from_int(4));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Dense::identity(&f, 2));
    }
}
