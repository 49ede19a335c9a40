//! Exact linear algebra over the rationals: sparse vectors, dense row
//! reduction, and an incremental echelon basis that tracks coordinates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse vector: `(index, value)` pairs sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Rational::one())] }
    }

    pub fn single(i: usize, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_insert_with(Rational::zero) += c;
        }
        Self {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn get_ref(&self, i: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = core::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + c * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// Inserts or overwrites a single coordinate.
    pub fn set(&mut self, i: usize, c: Rational) {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => {
                if c.is_zero() {
                    self.entries.remove(k);
                } else {
                    self.entries[k].1 = c;
                }
            }
            Err(k) => {
                if !c.is_zero() {
                    self.entries.insert(k, (i, c));
                }
            }
        }
    }

    /// Re-indexes through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, c)| map(*i).map(|j| (j, c.clone()))),
        )
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if i > j {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }
}

/// Dense row-major rational matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += x * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

/// Bilinear form `u^T g v`.
pub fn bilinear(g: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    let gv = mat_vec(g, v);
    u.iter().zip(&gv).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `uᵀ g v` for sparse `u`, `v`.
pub fn bilinear_sparse(g: &Matrix, u: &SparseVec, v: &SparseVec) -> Rational {
    let mut acc = Rational::zero();
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            acc += a * b * &g[i][j];
        }
    }
    acc
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of `{ x : m x = 0 }`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][fc].clone();
            }
            v
        })
        .collect()
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b` for one solution, `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// An incrementally grown basis of a subspace, kept in reduced echelon form,
/// remembering how each echelon row combines the vectors that were accepted.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    combos: Vec<SparseVec>,
    accepted: usize,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of accepted (independent) vectors.
    pub fn dim(&self) -> usize {
        self.accepted
    }

    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut combo = SparseVec::zero();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = v.get(p);
            if c.is_zero() {
                continue;
            }
            residual.add_scaled(&-c.clone(), &self.rows[k]);
            combo.add_scaled(&c, &self.combos[k]);
        }
        (residual, combo)
    }

    /// Adds `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let (residual, combo) = self.reduce(v);
        let Some((p, lead)) = residual.leading() else {
            return false;
        };
        let inv = lead.recip();
        let row = residual.scaled(&inv);
        // new row = (v - combo_of_accepted) / lead
        let mut new_combo = combo.neg();
        new_combo.set(self.accepted, Rational::one());
        let new_combo = new_combo.scaled(&inv);
        for k in 0..self.rows.len() {
            let c = self.rows[k].get(p);
            if !c.is_zero() {
                let neg = -c;
                self.rows[k].add_scaled(&neg, &row);
                self.combos[k].add_scaled(&neg, &new_combo);
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        self.combos.push(new_combo);
        self.accepted += 1;
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` with respect to the accepted vectors, in insertion order.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }
}
