//! Root-system side: Chevalley bases, maximal parabolics with abelian
//! radical, greedy strongly orthogonal roots, the Jordan algebra on `n`,
//! the quadratic forms `Q_ij`, and Jacobson coordinatization.

mod chevalley;
mod coordinatize;
mod forms;
mod system;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use chevalley::{chevalley_bracket, coroot, ChevalleyConstants, ChevalleyVector};
pub use coordinatize::{coordinatize, cross_validate, Coordinatization, CrossValidation};
pub use forms::{q_forms, witt_decomposition, QForm, WittDecomposition};
pub use system::{height, CartanType, Root, RootSystem};

use crate::error::{Error, Result};
use crate::jordan::JordanTable;
use crate::kkt::jordan_from_grading;
use crate::lie::{graded_labels, LieAlgebra, Triple};
use crate::linalg::SparseVec;
use crate::rational::Rational;

/// The parabolic data attached to a simple root `α_j` with `m_j(β) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    /// One-based node.
    pub node: usize,
    /// Positive roots with `m_j(α) = 1`, in root order.
    pub n_roots: Vec<usize>,
    /// Positive roots with `m_j(α) = 0`.
    pub m_roots: Vec<usize>,
    /// Greedy strongly orthogonal roots `β_1..β_r`.
    pub strongly_orthogonal: Vec<usize>,
}

impl ParabolicDecomposition {
    pub fn degree(&self) -> usize {
        self.strongly_orthogonal.len()
    }
}

/// Partitions the positive roots by `m_j` and chooses `S` greedily: the
/// highest root, then repeatedly the highest root of `n` orthogonal to
/// everything chosen so far.
pub fn parabolic(sys: &RootSystem, node: usize) -> Result<ParabolicDecomposition> {
    if node == 0 || node > sys.rank() {
        return Err(Error::IndexOutOfRange { index: node, bound: sys.rank() });
    }
    let j = node - 1;
    let coefficient = sys.highest_root()[j];
    if coefficient != 1 {
        return Err(Error::NonAbelianRadical { node, coefficient });
    }
    let roots = sys.positive_roots();
    let n_roots: Vec<usize> = (0..roots.len()).filter(|&k| roots[k][j] == 1).collect();
    let m_roots: Vec<usize> = (0..roots.len()).filter(|&k| roots[k][j] == 0).collect();
    let mut s: Vec<usize> = Vec::new();
    while let Some(&next) =
        n_roots.iter().rev().find(|&&k| s.iter().all(|&b| sys.inner(&roots[k], &roots[b]) == 0))
    {
        s.push(next);
    }
    Ok(ParabolicDecomposition { node, n_roots, m_roots, strongly_orthogonal: s })
}

/// Whether neither `α + β` nor `α − β` is a root.
pub fn strongly_orthogonal(sys: &RootSystem, a: &[i64], b: &[i64]) -> bool {
    let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let diff: Root = a.iter().zip(b).map(|(x, y)| x - y).collect();
    !sys.is_root(&sum) && !sys.is_root(&diff)
}

/// The node used for each family of the classification table.
pub fn default_node(kind: CartanType, rank: usize) -> Result<usize> {
    match kind {
        CartanType::C => Ok(rank),
        CartanType::A if rank % 2 == 1 => Ok(rank.div_ceil(2)),
        CartanType::A => Err(Error::Unsupported(format!(
            "A{rank} has no self-opposite maximal parabolic with abelian radical"
        ))),
        CartanType::B | CartanType::D => Ok(1),
        CartanType::E7 => Ok(7),
    }
}

/// The table's prediction `(dim n, r, d)` for a type and node.
pub fn table_prediction(kind: CartanType, rank: usize, node: usize) -> Option<(usize, usize, usize)> {
    match (kind, node) {
        (CartanType::C, j) if j == rank => Some((rank * (rank + 1) / 2, rank, 1)),
        (CartanType::A, j) if rank % 2 == 1 && 2 * j == rank + 1 => Some((j * j, j, 2)),
        (CartanType::D, 1) => Some((2 * (rank - 1), 2, 2 * rank - 4)),
        (CartanType::D, j) if rank % 2 == 0 && (j == rank || j == rank - 1) => {
            let n = rank / 2;
            Some((n * (2 * n - 1), n, 4))
        }
        (CartanType::E7, 7) => Some((27, 3, 8)),
        (CartanType::B, 1) => Some((2 * rank - 1, 2, 2 * rank - 3)),
        _ => None,
    }
}

/// A split simple Lie algebra in a Chevalley basis, graded by a parabolic.
///
/// Basis order: `e_{−α}` for `α` in `n` (degree −2), then `e_{−α}` for the
/// positive roots of `m`, `h_1..h_l`, `e_α` for the positive roots of `m`
/// (degree 0), then `e_α` for `α` in `n` (degree 2). The triple is
/// `e = Σ e_{β_i}`, `f = Σ e_{−β_i}`, `h = Σ h_{β_i}`.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub system: RootSystem,
    pub constants: ChevalleyConstants,
    pub parabolic: ParabolicDecomposition,
    pub basis: Vec<ChevalleyVector>,
    pub algebra: LieAlgebra,
    index: BTreeMap<Vec<i64>, usize>,
}

impl ChevalleyAlgebra {
    pub fn build(kind: CartanType, rank: usize, node: Option<usize>) -> Result<Self> {
        let system = RootSystem::new(kind, rank)?;
        let node = match node {
            Some(n) => n,
            None => default_node(kind, rank)?,
        };
        let parabolic = parabolic(&system, node)?;
        let constants = ChevalleyConstants::compute(&system)?;
        let roots = system.positive_roots();
        let neg = |k: usize| roots[k].iter().map(|c| -c).collect::<Root>();
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for &k in &parabolic.n_roots {
            basis.push(ChevalleyVector::Root(neg(k)));
            degrees.push(-2);
        }
        for &k in &parabolic.m_roots {
            basis.push(ChevalleyVector::Root(neg(k)));
            degrees.push(0);
        }
        for i in 0..rank {
            basis.push(ChevalleyVector::Cartan(i));
            degrees.push(0);
        }
        for &k in &parabolic.m_roots {
            basis.push(ChevalleyVector::Root(roots[k].clone()));
            degrees.push(0);
        }
        for &k in &parabolic.n_roots {
            basis.push(ChevalleyVector::Root(roots[k].clone()));
            degrees.push(2);
        }
        let key = |v: &ChevalleyVector| match v {
            ChevalleyVector::Root(r) => r.clone(),
            ChevalleyVector::Cartan(i) => cartan_key(*i),
        };
        let index: BTreeMap<Vec<i64>, usize> = basis.iter().enumerate().map(|(i, v)| (key(v), i)).collect();
        let dim = basis.len();
        let mut brackets = vec![vec![SparseVec::zero(); dim]; dim];
        for a in 0..dim {
            for b in a + 1..dim {
                let terms = chevalley_bracket(&system, &constants, &basis[a], &basis[b])?;
                let v = SparseVec::from_pairs(terms.into_iter().map(|(vec, c)| (index[&key(&vec)], c)));
                brackets[b][a] = v.neg();
                brackets[a][b] = v;
            }
        }
        let ones = vec![Rational::from_integer(1.into()); parabolic.degree()];
        let (triple, frame) = triple_and_frame(&system, &parabolic, &index, &ones);
        let algebra = LieAlgebra::new(graded_labels(&degrees), degrees, brackets, triple, frame)?;
        Ok(Self { system, constants, parabolic, basis, algebra, index })
    }

    /// Basis index of `e_α` for a signed root.
    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.index[&cartan_key(i)]
    }

    /// Basis index of the `k`-th root of `n`.
    pub fn n_index(&self, k: usize) -> usize {
        self.algebra.dim() - self.parabolic.n_roots.len() + k
    }

    /// The algebra with rescaled triple and frame.
    pub fn rescaled(&self, scaling: &[Rational]) -> Result<LieAlgebra> {
        if scaling.len() != self.parabolic.degree() {
            return Err(Error::DimensionMismatch { expected: self.parabolic.degree(), found: scaling.len() });
        }
        if scaling.iter().any(|c| c == &Rational::from_integer(0.into())) {
            return Err(Error::InvalidParameter("scaling factors must be nonzero".into()));
        }
        let (triple, frame) = triple_and_frame(&self.system, &self.parabolic, &self.index, scaling);
        Ok(self.algebra.with_triple(triple, frame))
    }

    /// Pierce components from root data: `J_ii = k e_{β_i}` and `J_ij`
    /// spanned by the roots `α` of `n` with `⟨α, β_i^∨⟩ = ⟨α, β_j^∨⟩ = 1`
    /// and `⟨α, β_k^∨⟩ = 0` otherwise. Values are positions in `n`.
    pub fn pierce_roots(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let roots = self.system.positive_roots();
        let s = &self.parabolic.strongly_orthogonal;
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (pos, &k) in self.parabolic.n_roots.iter().enumerate() {
            let pairings: Vec<i64> = s.iter().map(|&b| self.system.pairing(&roots[k], &roots[b])).collect();
            let ones: Vec<usize> = (0..s.len()).filter(|&i| pairings[i] == 1).collect();
            let rest_zero = (0..s.len()).all(|i| ones.contains(&i) || pairings[i] == 0);
            if let Some(i) = s.iter().position(|&b| b == k) {
                out.entry((i, i)).or_default().push(pos);
            } else if ones.len() == 2 && rest_zero {
                out.entry((ones[0], ones[1])).or_default().push(pos);
            }
        }
        out
    }

    /// The `(dim n, r, d)` triple computed from the decomposition.
    pub fn table_row(&self) -> (usize, usize, usize) {
        let pierce = self.pierce_roots();
        let d = pierce.get(&(0, 1)).map_or(0, |v| v.len());
        (self.parabolic.n_roots.len(), self.parabolic.degree(), d)
    }
}

fn cartan_key(i: usize) -> Vec<i64> {
    vec![i64::MIN, i as i64]
}

/// The triple and frame after `f_i ↦ c_i f_i`, `e_i ↦ e_i / c_i`.
fn triple_and_frame(
    system: &RootSystem,
    parabolic: &ParabolicDecomposition,
    index: &BTreeMap<Vec<i64>, usize>,
    scaling: &[Rational],
) -> (Triple, Vec<(SparseVec, SparseVec)>) {
    let roots = system.positive_roots();
    let mut frame = Vec::new();
    let (mut e, mut h, mut f) = (SparseVec::zero(), SparseVec::zero(), SparseVec::zero());
    for (&b, c) in parabolic.strongly_orthogonal.iter().zip(scaling) {
        let beta = &roots[b];
        let nb: Root = beta.iter().map(|x| -x).collect();
        let ei = SparseVec::single(index[beta], c.recip());
        let fi = SparseVec::single(index[&nb], c.clone());
        let hi = SparseVec::from_pairs(
            coroot(system, beta).into_iter().enumerate().map(|(i, v)| (index[&cartan_key(i)], v)),
        );
        e = e.add(&ei);
        f = f.add(&fi);
        h = h.add(&hi);
        frame.push((ei, fi));
    }
    (Triple { e, h, f }, frame)
}

pub fn build_split_lie(kind: CartanType, rank: usize) -> Result<LieAlgebra> {
    Ok(ChevalleyAlgebra::build(kind, rank, None)?.algebra)
}

/// The Jordan algebra on `n` with `x ∘ y = ½[x, [f, y]]` for the triple
/// rescaled by `scaling`; basis vectors are the root vectors of `n` in order.
pub fn jordan_from_roots(ch: &ChevalleyAlgebra, scaling: &[Rational]) -> Result<JordanTable> {
    jordan_from_grading(&ch.rescaled(scaling)?)
}

#[cfg(test)]
mod tests;
