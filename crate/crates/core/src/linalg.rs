//! Exact row reduction over `Q`.
//!
//! Pivots are chosen deterministically: leftmost column with a nonzero entry
//! at or below the current row, first such row.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;
use crate::{Error, Result};

pub type Vector = Vec<Q>;
pub type SparseVec = BTreeMap<usize, Q>;

pub fn sparse_add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vector {
    let mut out = vec![Q::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, x) in r.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::rational::q(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, j) * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn row_reduce(m: &RationalMatrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = Q::one() / a.get(r, c).clone();
        for j in c..a.cols {
            let x = a.get(r, j) * &inv;
            a.set(r, j, x);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let x = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        reduced: a,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    row_reduce(m).rank
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vector> {
    let e = row_reduce(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.reduced.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// The pivot columns of `m`, a basis of its column space.
pub fn image_basis(m: &RationalMatrix) -> Vec<Vector> {
    row_reduce(m).pivots.iter().map(|&c| m.column(c)).collect()
}

/// Coefficients expressing `v` in the span of `basis`, if it lies there.
///
/// When `basis` is independent the coefficients are unique.
pub fn in_span(v: &[Q], basis: &[Vector]) -> Result<Option<Vector>> {
    for b in basis {
        if b.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                found: b.len(),
            });
        }
    }
    let n = basis.len();
    // augmented system [B | v]
    let mut cols: Vec<Vector> = basis.to_vec();
    cols.push(v.to_vec());
    let m = RationalMatrix::from_columns(&cols, v.len())?;
    let e = row_reduce(&m);
    if e.pivots.contains(&n) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.reduced.get(r, n).clone();
    }
    Ok(Some(x))
}

/// A subspace kept in reduced echelon form, for incremental membership tests.
#[derive(Debug, Clone, Default)]
pub struct Subspace {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[Q]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v[j] -= &f * x;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / r[p].clone();
        let r: Vector = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (j, x) in r.iter().enumerate() {
                    if !x.is_zero() {
                        row[j] -= &f * x;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}
