//! Composition algebras of dimension 1, 2, 4 and 8 built by Cayley–Dickson
//! doubling.
//!
//! Doubling convention: an element of the double of `A` by `γ` is a pair
//! `(a, b)` with
//!
//! ```text
//! (a, b)(c, d) = (ac + γ d̄b, da + bc̄),   conj(a, b) = (ā, -b),
//! N(a, b) = N(a) - γ N(b).
//! ```
//!
//! With `γ = -1` at every step one gets the classical division forms over
//! `Q` (complex numbers, Hamilton quaternions, Graves octonions); `γ = 1`
//! gives the split forms. Correctness of the convention is checked at
//! construction time: the norm must compose on every basis quadruple.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::rational::Rational;

/// How the algebra was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Cayley–Dickson doubling of `Q` with the given parameters.
    Doubling(Vec<Rational>),
    /// An explicit multiplication table (e.g. recovered by coordinatization).
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    dim: usize,
    origin: Origin,
    labels: Vec<String>,
    // table[i][j] = e_i e_j
    table: Vec<Vec<SparseVec>>,
    // trace of each basis vector
    trace: Vec<Rational>,
}

const GENERATORS: [&str; 3] = ["i", "j", "l"];

fn basis_label(k: usize) -> String {
    if k == 0 {
        return "1".to_string();
    }
    GENERATORS
        .iter()
        .enumerate()
        .filter(|(bit, _)| k & (1 << bit) != 0)
        .map(|(_, g)| *g)
        .collect()
}

impl CompositionAlgebra {
    /// Builds the algebra of dimension `dim` from `log2(dim)` doubling parameters.
    pub fn build(dim: usize, gammas: &[Rational]) -> Result<Self> {
        let steps = match dim {
            1 => 0,
            2 => 1,
            4 => 2,
            8 => 3,
            _ => {
                return Err(Error::InvalidParameter(alloc::format!(
                    "composition algebra dimension must be 1, 2, 4 or 8, got {dim}"
                )))
            }
        };
        if gammas.len() != steps {
            return Err(Error::InvalidParameter(alloc::format!(
                "dimension {dim} needs {steps} doubling parameters, got {}",
                gammas.len()
            )));
        }
        Self::doubling(gammas)
    }

    /// The split algebra of the given dimension (all doubling parameters equal to 1).
    pub fn split(dim: usize) -> Result<Self> {
        let steps = dim.trailing_zeros() as usize;
        Self::build(dim, &vec![Rational::one(); steps])
    }

    /// The rational field itself.
    pub fn field() -> Self {
        Self::doubling(&[]).expect("Q is a composition algebra")
    }

    /// Iterated doubling of `Q`; `gammas.len()` must be at most 3.
    pub fn doubling(gammas: &[Rational]) -> Result<Self> {
        if gammas.len() > 3 {
            return Err(Error::InvalidParameter(
                "at most three doublings give a composition algebra".into(),
            ));
        }
        if gammas.iter().any(|g| g.is_zero()) {
            return Err(Error::InvalidParameter("doubling parameter must be nonzero".into()));
        }
        let mut alg = CompositionAlgebra {
            dim: 1,
            origin: Origin::Doubling(Vec::new()),
            labels: vec!["1".to_string()],
            table: vec![vec![SparseVec::unit(0)]],
            trace: vec![Rational::from_integer(2.into())],
        };
        for gamma in gammas {
            alg = alg.double(gamma);
        }
        alg.origin = Origin::Doubling(gammas.to_vec());
        alg.check_composition()?;
        Ok(alg)
    }

    fn double(&self, gamma: &Rational) -> Self {
        let n = self.dim;
        let dim = 2 * n;
        let mul = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            let (a, b) = x.split_at(n);
            let (c, d) = y.split_at(n);
            let mut first = self.mul(a, c);
            let db = self.mul(&self.conj(d), b);
            for (f, t) in first.iter_mut().zip(&db) {
                *f += gamma * t;
            }
            let mut second = self.mul(d, a);
            let bc = self.mul(b, &self.conj(c));
            for (s, t) in second.iter_mut().zip(&bc) {
                *s += t;
            }
            first.extend(second);
            first
        };
        let unit = |k: usize| {
            let mut v = vec![Rational::zero(); dim];
            v[k] = Rational::one();
            v
        };
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| SparseVec::from_dense(&mul(&unit(i), &unit(j))))
                    .collect()
            })
            .collect();
        let mut trace = self.trace.clone();
        trace.resize(dim, Rational::zero());
        CompositionAlgebra {
            dim,
            origin: Origin::Table,
            labels: (0..dim).map(basis_label).collect(),
            table,
            trace,
        }
    }

    /// An algebra from an explicit table; basis vector 0 must be the unit.
    /// `trace[k]` is the trace of basis vector `k`. The composition law is
    /// checked before returning.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        trace: Vec<Rational>,
    ) -> Result<Self> {
        let dim = labels.len();
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return Err(Error::InvalidParameter(alloc::format!(
                "composition algebra dimension must be 1, 2, 4 or 8, got {dim}"
            )));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim) || trace.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: table.len() });
        }
        let alg = CompositionAlgebra { dim, origin: Origin::Table, labels, table, trace };
        for j in 0..dim {
            if alg.table[0][j] != SparseVec::unit(j) || alg.table[j][0] != SparseVec::unit(j) {
                return Err(Error::Construction("basis vector 0 is not a two-sided unit".into()));
            }
        }
        alg.check_composition()?;
        Ok(alg)
    }

    /// Checks the fully polarized composition law
    /// `B(ac, bd) + B(ad, bc) = B(a, b) B(c, d)` on all basis quadruples,
    /// which is equivalent to `N(uv) = N(u) N(v)` in characteristic zero.
    fn check_composition(&self) -> Result<()> {
        let n = self.dim;
        let gram = self.gram();
        let form = |x: &SparseVec, y: &SparseVec| -> Rational {
            let mut acc = Rational::zero();
            for (i, a) in x.iter() {
                for (j, b) in y.iter() {
                    if !gram[i][j].is_zero() {
                        acc += a * b * &gram[i][j];
                    }
                }
            }
            acc
        };
        if linalg::determinant(&gram).is_zero() {
            return Err(Error::Construction("norm form is degenerate".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = form(&self.table[a][c], &self.table[b][d])
                            + form(&self.table[a][d], &self.table[b][c]);
                        if lhs != &gram[a][b] * &gram[c][d] {
                            return Err(Error::Construction(alloc::format!(
                                "norm does not compose on basis ({a},{b},{c},{d})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Doubling parameters, empty for table-defined algebras.
    pub fn gammas(&self) -> &[Rational] {
        match &self.origin {
            Origin::Doubling(g) => g,
            Origin::Table => &[],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Product of two basis vectors.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn one(&self) -> Vec<Rational> {
        self.basis(0)
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim]
    }

    pub fn basis(&self, k: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[k] = Rational::one();
        v
    }

    pub fn is_zero(&self, u: &[Rational]) -> bool {
        u.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter() {
                    out[k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn trace(&self, u: &[Rational]) -> Rational {
        u.iter()
            .zip(&self.trace)
            .filter(|(a, t)| !a.is_zero() && !t.is_zero())
            .fold(Rational::zero(), |acc, (a, t)| acc + a * t)
    }

    /// `ū = T(u)·1 - u`.
    pub fn conj(&self, u: &[Rational]) -> Vec<Rational> {
        let t = self.trace(u);
        let mut out: Vec<Rational> = u.iter().map(|c| -c).collect();
        out[0] += t;
        out
    }

    /// The scalar `N(u)` with `u ū = N(u)·1`.
    pub fn norm(&self, u: &[Rational]) -> Rational {
        // (u ū)_0 computed without forming the whole product
        let ubar = self.conj(u);
        let mut acc = Rational::zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ubar.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(c) = self.table[i][j].get_ref(0) {
                    acc += a * b * c;
                }
            }
        }
        acc
    }

    /// Polar form of the norm, `B(u, v) = N(u+v) - N(u) - N(v) = T(u v̄)`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.trace(&self.mul(u, &self.conj(v)))
    }

    /// Gram matrix of the norm's polar form on the basis.
    pub fn gram(&self) -> Matrix {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.bilinear(&self.basis(i), &self.basis(j))).collect())
            .collect()
    }

    /// Whether `(e_i e_j) e_k = e_i (e_j e_k)` for all basis triples.
    pub fn is_associative(&self) -> bool {
        self.first_nonassociative_triple().is_none()
    }

    pub fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.mul(&self.basis(i), &self.basis(j)), &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Checks the linearized alternative laws on basis triples:
    /// the associator is alternating.
    pub fn is_alternative(&self) -> bool {
        let n = self.dim;
        let assoc = |i: usize, j: usize, k: usize| -> Vec<Rational> {
            let l = self.mul(&self.mul(&self.basis(i), &self.basis(j)), &self.basis(k));
            let r = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
            l.iter().zip(&r).map(|(a, b)| a - b).collect()
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = assoc(i, j, k);
                    let swapped_left = assoc(j, i, k);
                    let swapped_right = assoc(i, k, j);
                    let sum_left = a.iter().zip(&swapped_left).all(|(x, y)| (x + y).is_zero());
                    let sum_right = a.iter().zip(&swapped_right).all(|(x, y)| (x + y).is_zero());
                    if !sum_left || !sum_right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// An element of a composition algebra.
#[derive(Clone, Debug)]
pub struct CAElement {
    algebra: Arc<CompositionAlgebra>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CAElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

fn same_algebra(a: &Arc<CompositionAlgebra>, b: &Arc<CompositionAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl CAElement {
    pub fn new(algebra: Arc<CompositionAlgebra>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: coeffs.len() });
        }
        Ok(Self { algebra, coeffs })
    }

    pub fn one(algebra: &Arc<CompositionAlgebra>) -> Self {
        Self { coeffs: algebra.one(), algebra: algebra.clone() }
    }

    pub fn algebra(&self) -> &Arc<CompositionAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.algebra.is_zero(&self.coeffs)
    }

    pub fn mul(&self, other: &CAElement) -> Result<CAElement> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self {
            coeffs: self.algebra.mul(&self.coeffs, &other.coeffs),
            algebra: self.algebra.clone(),
        })
    }

    pub fn conj(&self) -> CAElement {
        Self { coeffs: self.algebra.conj(&self.coeffs), algebra: self.algebra.clone() }
    }

    pub fn norm(&self) -> Rational {
        self.algebra.norm(&self.coeffs)
    }

    pub fn trace(&self) -> Rational {
        self.algebra.trace(&self.coeffs)
    }
}

/// `ca_mul(u, v)`.
pub fn ca_mul(u: &CAElement, v: &CAElement) -> Result<CAElement> {
    u.mul(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn quaternion_split() -> CompositionAlgebra {
        CompositionAlgebra::split(4).unwrap()
    }

    #[test]
    fn field_base_case() {
        let q = CompositionAlgebra::build(1, &[]).unwrap();
        let u = [int(3)];
        assert_eq!(q.norm(&u), int(9));
        assert_eq!(q.trace(&u), int(6));
        assert_eq!(q.conj(&u), vec![int(3)]);
    }

    #[test]
    fn complex_norm_is_sum_of_squares() {
        // (a,b)(a,-b) = (a^2 + gamma(-b)b, -ba + ba) = (a^2 - gamma b^2, 0)
        let c = CompositionAlgebra::build(2, &[int(-1)]).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                assert_eq!(c.norm(&[int(a), int(b)]), int(a * a + b * b));
            }
        }
    }

    #[test]
    fn zero_gamma_rejected() {
        assert!(matches!(
            CompositionAlgebra::build(4, &[int(1), int(0)]),
            Err(Error::InvalidParameter(_))
        ));
        assert!(CompositionAlgebra::build(3, &[]).is_err());
        assert!(CompositionAlgebra::build(4, &[int(1)]).is_err());
    }

    #[test]
    fn split_quaternions_have_zero_divisors() {
        // Brute force over {-1,0,1}^4 for a pair with uv = 0.
        let q = quaternion_split();
        let vectors: Vec<Vec<Rational>> = (0..81)
            .map(|mut k| {
                (0..4)
                    .map(|_| {
                        let d = k % 3;
                        k /= 3;
                        int(d as i64 - 1)
                    })
                    .collect()
            })
            .filter(|v: &Vec<Rational>| !q.is_zero(v))
            .collect();
        let found = vectors.iter().any(|u| vectors.iter().any(|v| q.is_zero(&q.mul(u, v))));
        assert!(found);
    }

    #[test]
    fn associativity_and_alternativity() {
        for dim in [1, 2, 4] {
            let a = CompositionAlgebra::split(dim).unwrap();
            assert!(a.is_associative(), "dim {dim}");
            assert!(a.is_alternative());
        }
        let o = CompositionAlgebra::split(8).unwrap();
        assert!(o.first_nonassociative_triple().is_some());
        assert!(o.is_alternative());
        let g = CompositionAlgebra::build(8, &[int(-1), int(-1), int(-1)]).unwrap();
        assert!(!g.is_associative());
        assert!(g.is_alternative());
    }

    #[test]
    fn element_api_checks_algebra() {
        let a = Arc::new(quaternion_split());
        let b = Arc::new(CompositionAlgebra::build(4, &[int(-1), int(-1)]).unwrap());
        let u = CAElement::one(&a);
        let v = CAElement::one(&b);
        assert_eq!(ca_mul(&u, &v), Err(Error::AlgebraMismatch));
        let w = CAElement::new(a.clone(), vec![int(1), int(2), int(0), int(-1)]).unwrap();
        assert_eq!(ca_mul(&u, &w).unwrap(), w);
        assert_eq!(CAElement::one(&a).conj(), CAElement::one(&a));
        assert!(CAElement::new(a, vec![int(1)]).is_err());
    }

    #[test]
    fn split_forms_are_isotropic() {
        for dim in [2, 4, 8] {
            let a = CompositionAlgebra::split(dim).unwrap();
            let found = (1..dim).any(|k| {
                let mut u = a.one();
                u[k] = int(1);
                a.norm(&u).is_zero()
            });
            assert!(found, "dim {dim}");
        }
    }

    #[test]
    fn labels() {
        let o = CompositionAlgebra::split(8).unwrap();
        assert_eq!(o.labels(), ["1", "i", "j", "ij", "l", "il", "jl", "ijl"]);
    }
}
