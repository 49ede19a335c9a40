//! The Kantor–Koecher–Tits construction `g = n̄ ⊕ m ⊕ n` of a Jordan algebra.
//!
//! Basis layout: `n̄` (one vector `ȳ` per Jordan basis vector, degree -2),
//! then `m` (degree 0), then `n` (degree 2). The map `w(y) = ½[f,[f,y]]`
//! sends the Jordan basis vector `y ∈ n` to `ȳ ∈ n̄`.
//!
//! Brackets, with `D_{x,y}(z) = 2((x∘z)∘y − (z∘y)∘x − (x∘y)∘z)`:
//!
//! ```text
//! [x, ȳ] = D_{x,y} ∈ m        [T, z] = T(z)        [D_{x,y}, z̄] = −(D_{y,x}(z))‾
//! [T, T'] = T T' − T' T       [n, n] = [n̄, n̄] = 0
//! ```
//!
//! `m` is spanned by the operators `D_{x,y}`; its basis is the first
//! independent subset of `{D_{a,b}}` over basis pairs in lexicographic order.
//! The triple is `e = 1_J ∈ n`, `f = −1̄_J`, `h = [e, f] = −D_{e,e}`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jordan::{JordanAlgebra, JordanTable};
use crate::lie::{graded_labels, LieAlgebra, Triple};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::rational::{half, int, Rational};

/// A linear operator on `J` stored by columns: `cols[c]` is the image of basis vector `c`.
pub type Operator = Vec<SparseVec>;

/// An element of `m` as a pair of operators: its action on `n` and on `n̄`
/// (both written in the Jordan basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureOperator {
    pub on_n: Operator,
    pub on_nbar: Operator,
}

/// `D_{x,y}` for basis vectors `x = b_a`, `y = b_b`.
pub fn structure_operator(t: &JordanTable, a: usize, b: usize) -> Operator {
    let two = int(2);
    let xy = t.basis_product(a, b).clone();
    (0..t.dim())
        .map(|c| {
            let xz = t.basis_product(a, c);
            let zy = t.basis_product(c, b);
            let mut v = t.mul_sparse(xz, &SparseVec::unit(b));
            v.add_scaled(&-Rational::from_integer(1.into()), &t.mul_sparse(zy, &SparseVec::unit(a)));
            v.add_scaled(&-Rational::from_integer(1.into()), &t.mul_sparse(&xy, &SparseVec::unit(c)));
            v.scaled(&two)
        })
        .collect()
}

/// `D_{x,y}` for arbitrary elements.
pub fn structure_operator_of(t: &JordanTable, x: &[Rational], y: &[Rational]) -> Vec<Vec<Rational>> {
    let xy = t.mul(x, y);
    (0..t.dim())
        .map(|c| {
            let z = t.basis(c);
            let a = t.mul(&t.mul(x, &z), y);
            let b = t.mul(&t.mul(&z, y), x);
            let d = t.mul(&xy, &z);
            a.iter().zip(&b).zip(&d).map(|((a, b), d)| (a - b - d) * int(2)).collect()
        })
        .collect()
}

fn flatten(op: &Operator, n: usize) -> SparseVec {
    SparseVec::from_pairs(op.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(k, v)| (c * n + k, v.clone()))))
}

fn apply(op: &Operator, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::zero();
    for (c, a) in v.iter() {
        out.add_scaled(a, &op[c]);
    }
    out
}

fn compose(s: &Operator, t: &Operator) -> Operator {
    t.iter().map(|col| apply(s, col)).collect()
}

/// The result of the construction together with the concrete `m` operators.
#[derive(Clone, Debug)]
pub struct Kkt {
    pub algebra: LieAlgebra,
    /// Basis of `m` as operator pairs.
    pub m_basis: Vec<StructureOperator>,
    /// `(a, b)` with `m_k = D_{b_a, b_b}`.
    pub m_generators: Vec<(usize, usize)>,
}

impl Kkt {
    pub fn jordan_dim(&self) -> usize {
        self.m_basis.first().map_or(0, |op| op.on_n.len())
    }

    /// Index of `ȳ` for Jordan basis vector `y`.
    pub fn nbar_index(&self, y: usize) -> usize {
        y
    }

    pub fn m_index(&self, k: usize) -> usize {
        self.jordan_dim() + k
    }

    pub fn n_index(&self, x: usize) -> usize {
        self.jordan_dim() + self.m_basis.len() + x
    }
}

pub fn build_kkt(j: &JordanAlgebra) -> Result<LieAlgebra> {
    Ok(build_kkt_table(j.table())?.algebra)
}

pub fn build_kkt_table(t: &JordanTable) -> Result<Kkt> {
    let n = t.dim();
    let mut echelon = EchelonBasis::new();
    let mut ops: Vec<Operator> = Vec::new();
    let mut generators = Vec::new();
    let mut all_ops: Vec<Vec<Operator>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let op = structure_operator(t, a, b);
            if echelon.insert(&flatten(&op, n)) {
                ops.push(op.clone());
                generators.push((a, b));
            }
            row.push(op);
        }
        all_ops.push(row);
    }
    let m = ops.len();
    let companions: Vec<Operator> = generators
        .iter()
        .map(|&(a, b)| all_ops[b][a].iter().map(SparseVec::neg).collect())
        .collect();
    let coords_of = |op: &Operator| -> Result<SparseVec> {
        echelon
            .coords(&flatten(op, n))
            .ok_or_else(|| Error::Construction("structure operators are not closed under commutators".into()))
    };

    let (nbar0, m0, n0) = (0, n, n + m);
    let dim = 2 * n + m;
    let mut brackets = vec![vec![SparseVec::zero(); dim]; dim];
    let shift = |v: &SparseVec, off: usize| v.remap(|i| Some(i + off));
    // [x, ȳ] = D_{x,y}
    for a in 0..n {
        for b in 0..n {
            let v = shift(&coords_of(&all_ops[a][b])?, m0);
            brackets[nbar0 + b][n0 + a] = v.neg();
            brackets[n0 + a][nbar0 + b] = v;
        }
    }
    // [T, z] and [T, z̄]
    for k in 0..m {
        for c in 0..n {
            let v = shift(&ops[k][c], n0);
            brackets[n0 + c][m0 + k] = v.neg();
            brackets[m0 + k][n0 + c] = v;
            let v = shift(&companions[k][c], nbar0);
            brackets[nbar0 + c][m0 + k] = v.neg();
            brackets[m0 + k][nbar0 + c] = v;
        }
    }
    // [T, T']
    for k in 0..m {
        for l in k + 1..m {
            let mut comm = compose(&ops[k], &ops[l]);
            for (c, col) in compose(&ops[l], &ops[k]).iter().enumerate() {
                comm[c] = comm[c].sub(col);
            }
            let v = shift(&coords_of(&comm)?, m0);
            brackets[m0 + l][m0 + k] = v.neg();
            brackets[m0 + k][m0 + l] = v;
        }
    }

    let mut degrees = vec![-2; n];
    degrees.extend(vec![0; m]);
    degrees.extend(vec![2; n]);
    let one = SparseVec::from_dense(t.identity());
    let e = shift(&one, n0);
    let f = shift(&one, nbar0).neg();
    let frame: Vec<(SparseVec, SparseVec)> = t
        .frame()
        .iter()
        .map(|ei| {
            let v = SparseVec::from_dense(ei);
            (shift(&v, n0), shift(&v, nbar0).neg())
        })
        .collect();
    // h = [e, f], computed from the table
    let mut h = SparseVec::zero();
    for (i, a) in e.iter() {
        for (j, b) in f.iter() {
            h.add_scaled(&(a * b), &brackets[i][j]);
        }
    }
    let triple = Triple { e, h, f };
    let algebra = LieAlgebra::new(graded_labels(&degrees), degrees, brackets, triple, frame)?;
    let m_basis = ops.into_iter().zip(companions).map(|(on_n, on_nbar)| StructureOperator { on_n, on_nbar }).collect();
    Ok(Kkt { algebra, m_basis, m_generators: generators })
}

/// Span check for `[n, n̄] = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub span_dim: usize,
    pub m_dim: usize,
    pub passed: bool,
}

/// Computes `dim span{[x, ȳ]}` over basis vectors of `n` and `n̄` and compares it with `dim m`.
pub fn verify_span(g: &LieAlgebra) -> SpanReport {
    let mut basis = EchelonBasis::new();
    for &x in &g.graded_indices(2) {
        for &y in &g.graded_indices(-2) {
            basis.insert(g.basis_bracket(x, y));
        }
    }
    let m_dim = g.graded_dims().1;
    SpanReport { span_dim: basis.dim(), m_dim, passed: basis.dim() == m_dim }
}

/// The Jordan algebra on `n` with `x ∘ y = ½[x, [f, y]]`, identity `e` and
/// the frame idempotents of `g`, in the order of the degree-2 basis vectors.
pub fn jordan_from_grading(g: &LieAlgebra) -> Result<JordanTable> {
    let idx = g.graded_indices(2);
    let pos = |i: usize| idx.iter().position(|&k| k == i);
    let restrict = |v: &SparseVec| -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); idx.len()];
        for (i, c) in v.iter() {
            let p = pos(i).ok_or(Error::NotHomogeneous)?;
            out[p] = c.clone();
        }
        Ok(out)
    };
    let f = &g.triple().f;
    let h = half();
    let mut products = vec![vec![SparseVec::zero(); idx.len()]; idx.len()];
    for (a, &x) in idx.iter().enumerate() {
        for (b, &y) in idx.iter().enumerate() {
            let fy = g.bracket(f, &SparseVec::unit(y));
            let v = g.bracket(&SparseVec::unit(x), &fy).scaled(&h);
            products[a][b] = SparseVec::from_dense(&restrict(&v)?);
        }
    }
    let identity = restrict(&g.triple().e)?;
    let frame = g.frame().iter().map(|(e, _)| restrict(e)).collect::<Result<Vec<_>>>()?;
    JordanTable::new(products, identity, frame)
}
