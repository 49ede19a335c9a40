//! The three Jordan families: hermitian matrices `H_r(D)` over an
//! associative composition algebra, the exceptional `H_3(D)` with `dim D = 8`,
//! and the quadratic algebras `J_2(V, Q)`.
//!
//! Coordinates. `H_r(D)`: the diagonal `a_1..a_r`, followed by the `d`
//! coefficients of each upper entry `x_ij` (`i < j`, lexicographic).
//! `J_2(V)`: `(a, b, v_1..v_n)`.
//!
//! The quadratic norm is `ab - Q(v)`: with the square
//! `(a,b,v)^2 = (a²+Q(v), b²+Q(v), (a+b)v)` this is the constant term of the
//! degree-two polynomial the element satisfies.

mod table;

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use table::{JordanTable, MinPoly, PierceDecomposition};

use crate::composition::CompositionAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::rational::{half, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanKind {
    Hermitian { r: usize, d: Arc<CompositionAlgebra> },
    /// `Q(v) = vᵀ gram v`.
    Quadratic { gram: Matrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanAlgebra {
    kind: JordanKind,
    table: JordanTable,
}

/// A matrix with entries in `D`, each entry a coefficient vector.
pub type DMatrix = Vec<Vec<Vec<Rational>>>;

fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < r);
    // number of pairs (p, q) with p < i, plus offset within row i
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

impl JordanAlgebra {
    pub fn hermitian(r: usize, d: Arc<CompositionAlgebra>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter("hermitian degree must be at least 2".into()));
        }
        if d.dim() == 8 && r != 3 {
            return Err(Error::InvalidParameter(
                "hermitian matrices over an octonion algebra form a Jordan algebra only for r = 3"
                    .into(),
            ));
        }
        let kind = JordanKind::Hermitian { r, d };
        let table = Self::hermitian_table(&kind);
        Ok(Self { kind, table })
    }

    pub fn quadratic(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidParameter("quadratic space must be nonzero".into()));
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("gram matrix must be square".into()));
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::InvalidParameter("gram matrix must be symmetric".into()));
        }
        if linalg::determinant(&gram).is_zero() {
            return Err(Error::InvalidParameter("quadratic form must be nondegenerate".into()));
        }
        let kind = JordanKind::Quadratic { gram };
        let table = Self::quadratic_table(&kind);
        Ok(Self { kind, table })
    }

    pub fn kind(&self) -> &JordanKind {
        &self.kind
    }

    pub fn table(&self) -> &JordanTable {
        &self.table
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            JordanKind::Hermitian { r, .. } => *r,
            JordanKind::Quadratic { .. } => 2,
        }
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// `d = dim D` for hermitian algebras, `dim V` for quadratic ones.
    pub fn off_diagonal_dim(&self) -> usize {
        match &self.kind {
            JordanKind::Hermitian { d, .. } => d.dim(),
            JordanKind::Quadratic { gram } => gram.len(),
        }
    }

    pub fn composition(&self) -> Option<&Arc<CompositionAlgebra>> {
        match &self.kind {
            JordanKind::Hermitian { d, .. } => Some(d),
            JordanKind::Quadratic { .. } => None,
        }
    }

    /// Coordinate offset of the upper entry `(i, j)`, `i < j`, of a hermitian algebra.
    pub fn entry_offset(&self, i: usize, j: usize) -> usize {
        let JordanKind::Hermitian { r, d } = &self.kind else {
            panic!("entry_offset on a quadratic Jordan algebra");
        };
        r + pair_index(*r, i, j) * d.dim()
    }

    /// `Q(v) = vᵀ gram v` for quadratic algebras.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let JordanKind::Quadratic { gram } = &self.kind else {
            panic!("quadratic_form on a hermitian Jordan algebra");
        };
        linalg::bilinear(gram, v, v)
    }

    /// `B(u, v)` with `B(v, v) = 2 Q(v)`.
    pub fn polar_form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let JordanKind::Quadratic { gram } = &self.kind else {
            panic!("polar_form on a hermitian Jordan algebra");
        };
        linalg::bilinear(gram, u, v) * Rational::from_integer(2.into())
    }

    /// Expands hermitian coordinates into a full matrix over `D`.
    pub fn to_matrix(&self, x: &[Rational]) -> DMatrix {
        let JordanKind::Hermitian { r, d } = &self.kind else {
            panic!("to_matrix on a quadratic Jordan algebra");
        };
        let (r, n) = (*r, d.dim());
        let mut m = vec![vec![d.zero(); r]; r];
        for i in 0..r {
            m[i][i] = d.one().into_iter().map(|c| c * &x[i]).collect();
            for j in i + 1..r {
                let off = self.entry_offset(i, j);
                let u = x[off..off + n].to_vec();
                m[j][i] = d.conj(&u);
                m[i][j] = u;
            }
        }
        m
    }

    /// Reads hermitian coordinates from the diagonal and upper triangle of `m`.
    /// Diagonal entries must be scalar multiples of the unit.
    pub fn from_matrix(&self, m: &DMatrix) -> Vec<Rational> {
        let JordanKind::Hermitian { r, d } = &self.kind else {
            panic!("from_matrix on a quadratic Jordan algebra");
        };
        let mut x = self.table.zero();
        for i in 0..*r {
            debug_assert!(m[i][i][1..].iter().all(|c| c.is_zero()), "non-scalar diagonal");
            x[i] = m[i][i][0].clone();
            for j in i + 1..*r {
                let off = self.entry_offset(i, j);
                x[off..off + d.dim()].clone_from_slice(&m[i][j]);
            }
        }
        x
    }

    fn hermitian_table(kind: &JordanKind) -> JordanTable {
        let JordanKind::Hermitian { r, d } = kind else { unreachable!() };
        let (r, n) = (*r, d.dim());
        let dim = r + r * (r - 1) / 2 * n;
        // Each basis vector as a sparse list of matrix entries (i, j, D-vector).
        let basis_entries = |k: usize| -> Vec<(usize, usize, Vec<Rational>)> {
            if k < r {
                return vec![(k, k, d.one())];
            }
            let (p, c) = ((k - r) / n, (k - r) % n);
            let (i, j) = (0..r)
                .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                .nth(p)
                .expect("pair index in range");
            let u = d.basis(c);
            vec![(j, i, d.conj(&u)), (i, j, u)]
        };
        let entries: Vec<_> = (0..dim).map(basis_entries).collect();
        let pos = |i: usize, j: usize| -> usize {
            if i == j {
                i
            } else {
                r + pair_index(r, i.min(j), i.max(j)) * n
            }
        };
        let h = half();
        let mut products = vec![vec![SparseVec::zero(); dim]; dim];
        for a in 0..dim {
            for b in a..dim {
                // ½(XY + YX), upper triangle and diagonal only
                let mut acc: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
                for (x, y) in [(&entries[a], &entries[b]), (&entries[b], &entries[a])] {
                    for (i, k, u) in x.iter() {
                        for (k2, j, v) in y.iter() {
                            if k != k2 || i > j {
                                continue;
                            }
                            let uv = d.mul(u, v);
                            let slot = acc.entry((*i, *j)).or_insert_with(|| d.zero());
                            for (s, t) in slot.iter_mut().zip(uv) {
                                *s += t;
                            }
                        }
                    }
                }
                let mut pairs = Vec::new();
                for ((i, j), u) in acc {
                    if i == j {
                        pairs.push((i, &u[0] * &h));
                    } else {
                        let off = pos(i, j);
                        pairs.extend(u.iter().enumerate().map(|(c, x)| (off + c, x * &h)));
                    }
                }
                let v = SparseVec::from_pairs(pairs);
                products[b][a] = v.clone();
                products[a][b] = v;
            }
        }
        let mut identity = vec![Rational::zero(); dim];
        let mut frame = Vec::with_capacity(r);
        for i in 0..r {
            identity[i] = Rational::one();
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::one();
            frame.push(e);
        }
        JordanTable::new(products, identity, frame).expect("consistent hermitian table")
    }

    fn quadratic_table(kind: &JordanKind) -> JordanTable {
        let JordanKind::Quadratic { gram } = kind else { unreachable!() };
        let n = gram.len();
        let dim = n + 2;
        let h = half();
        let mut products = vec![vec![SparseVec::zero(); dim]; dim];
        // (a,b,v)∘(a',b',v') = (aa' + vᵀGv', bb' + vᵀGv', ½((a+b)v' + (a'+b')v))
        products[0][0] = SparseVec::unit(0);
        products[1][1] = SparseVec::unit(1);
        for k in 0..n {
            for side in [0, 1] {
                products[side][2 + k] = SparseVec::single(2 + k, h.clone());
                products[2 + k][side] = SparseVec::single(2 + k, h.clone());
            }
            for l in 0..n {
                let g = gram[k][l].clone();
                products[2 + k][2 + l] = SparseVec::from_pairs([(0, g.clone()), (1, g)]);
            }
        }
        let mut identity = vec![Rational::zero(); dim];
        identity[0] = Rational::one();
        identity[1] = Rational::one();
        let frame = (0..2)
            .map(|i| {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::one();
                e
            })
            .collect();
        JordanTable::new(products, identity, frame).expect("consistent quadratic table")
    }
}

/// An element of a Jordan algebra.
#[derive(Clone, Debug)]
pub struct JordanElement {
    algebra: Arc<JordanAlgebra>,
    coords: Vec<Rational>,
}

impl PartialEq for JordanElement {
    fn eq(&self, other: &Self) -> bool {
        same(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

fn same(a: &Arc<JordanAlgebra>, b: &Arc<JordanAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl JordanElement {
    pub fn new(algebra: &Arc<JordanAlgebra>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: coords.len() });
        }
        Ok(Self { algebra: algebra.clone(), coords })
    }

    pub fn zero(algebra: &Arc<JordanAlgebra>) -> Self {
        Self { coords: algebra.table().zero(), algebra: algebra.clone() }
    }

    pub fn identity(algebra: &Arc<JordanAlgebra>) -> Self {
        Self { coords: algebra.table().identity().to_vec(), algebra: algebra.clone() }
    }

    /// The frame idempotent `e_i` (zero-based).
    pub fn idempotent(algebra: &Arc<JordanAlgebra>, i: usize) -> Result<Self> {
        let r = algebra.degree();
        if i >= r {
            return Err(Error::IndexOutOfRange { index: i, bound: r });
        }
        Ok(Self { coords: algebra.table().idempotent(i).to_vec(), algebra: algebra.clone() })
    }

    /// `Σ a_i e_i`.
    pub fn diagonal(algebra: &Arc<JordanAlgebra>, diag: &[Rational]) -> Result<Self> {
        let r = algebra.degree();
        if diag.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: diag.len() });
        }
        let mut coords = algebra.table().zero();
        coords[..r].clone_from_slice(diag);
        Ok(Self { coords, algebra: algebra.clone() })
    }

    /// A hermitian element from its diagonal and upper entries, keyed by zero-based `(i, j)`, `i < j`.
    pub fn hermitian(
        algebra: &Arc<JordanAlgebra>,
        diag: &[Rational],
        upper: &BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self> {
        let JordanKind::Hermitian { r, d } = algebra.kind() else {
            return Err(Error::AlgebraMismatch);
        };
        let mut x = Self::diagonal(algebra, diag)?;
        for (&(i, j), u) in upper {
            if i >= j || j >= *r {
                return Err(Error::IndexOutOfRange { index: j.max(i), bound: *r });
            }
            if u.len() != d.dim() {
                return Err(Error::DimensionMismatch { expected: d.dim(), found: u.len() });
            }
            let off = algebra.entry_offset(i, j);
            x.coords[off..off + d.dim()].clone_from_slice(u);
        }
        Ok(x)
    }

    pub fn quadratic(
        algebra: &Arc<JordanAlgebra>,
        a: Rational,
        b: Rational,
        v: &[Rational],
    ) -> Result<Self> {
        let JordanKind::Quadratic { gram } = algebra.kind() else {
            return Err(Error::AlgebraMismatch);
        };
        if v.len() != gram.len() {
            return Err(Error::DimensionMismatch { expected: gram.len(), found: v.len() });
        }
        let mut coords = vec![a, b];
        coords.extend_from_slice(v);
        Ok(Self { coords, algebra: algebra.clone() })
    }

    pub fn algebra(&self) -> &Arc<JordanAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Diagonal coefficient `a_i` (for `J_2`, `a` or `b`).
    pub fn diag(&self, i: usize) -> Rational {
        self.coords[i].clone()
    }

    /// Entry `x_ij` of a hermitian element (conjugated below the diagonal).
    pub fn entry(&self, i: usize, j: usize) -> Vec<Rational> {
        let JordanKind::Hermitian { d, .. } = self.algebra.kind() else {
            panic!("entry on a quadratic element");
        };
        if i == j {
            return d.one().into_iter().map(|c| c * &self.coords[i]).collect();
        }
        let (p, q) = (i.min(j), i.max(j));
        let off = self.algebra.entry_offset(p, q);
        let u = self.coords[off..off + d.dim()].to_vec();
        if i < j {
            u
        } else {
            d.conj(&u)
        }
    }

    /// The vector part `v` of a quadratic element.
    pub fn vector_part(&self) -> &[Rational] {
        &self.coords[2..]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with(&self, coords: Vec<Rational>) -> Self {
        Self { coords, algebra: self.algebra.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.with(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.algebra.table().mul(&self.coords, &other.coords)))
    }

    pub fn square(&self) -> Self {
        self.with(self.algebra.table().mul(&self.coords, &self.coords))
    }

    pub fn power(&self, n: usize) -> Self {
        let mut p = self.algebra.table().powers(&self.coords, n);
        self.with(p.pop().expect("powers are nonempty"))
    }
}

/// `x ∘ y`.
pub fn jordan_mul(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    x.mul(y)
}

pub fn generic_min_poly(x: &JordanElement) -> MinPoly {
    x.algebra.table().generic_min_poly(&x.coords)
}

pub fn jordan_norm(x: &JordanElement) -> Rational {
    generic_min_poly(x).norm()
}

pub fn jordan_trace(x: &JordanElement) -> Rational {
    generic_min_poly(x).trace()
}

pub fn jordan_inverse(x: &JordanElement) -> Result<JordanElement> {
    Ok(x.with(x.algebra.table().inverse(&x.coords)?))
}

pub fn pierce(j: &JordanAlgebra) -> PierceDecomposition {
    j.table().pierce()
}

/// The closed-form cubic norm of `H_3(D)` for
/// `x = [[a, u, w̄], [ū, b, v], [w, v̄, c]]`:
/// `abc - a N(v) - b N(w) - c N(u) + T((vw)u)`.
pub fn cubic_norm_formula(x: &JordanElement) -> Rational {
    let JordanKind::Hermitian { r: 3, d } = x.algebra.kind() else {
        panic!("cubic norm formula applies to degree-3 hermitian algebras");
    };
    let (a, b, c) = (x.diag(0), x.diag(1), x.diag(2));
    let u = x.entry(0, 1);
    let v = x.entry(1, 2);
    let w = x.entry(2, 0);
    &a * &b * &c - &a * d.norm(&v) - &b * d.norm(&w) - &c * d.norm(&u)
        + d.trace(&d.mul(&d.mul(&v, &w), &u))
}

/// `ab - Q(v)` for `J_2(V)`.
pub fn quadratic_norm_formula(x: &JordanElement) -> Rational {
    x.diag(0) * x.diag(1) - x.algebra.quadratic_form(x.vector_part())
}

impl JordanAlgebra {
    /// The quadratic form `Q_ij` on the Pierce component `J_ij`, read off by
    /// coefficient comparison in `x ∘ x = Q_ij(x)(e_i + e_j)`.
    pub fn pierce_form(&self, i: usize, j: usize) -> Result<(Vec<Vec<Rational>>, Matrix)> {
        let p = self.table.pierce();
        let key = (i.min(j), i.max(j));
        let basis = p.components.get(&key).cloned().unwrap_or_default();
        let gram = self.table.pierce_form(i, j, &basis)?;
        Ok((basis, gram))
    }

    pub fn one(&self) -> Vec<Rational> {
        self.table.identity().to_vec()
    }
}
