//! Jacobson coordinatization of the Jordan algebra on `n`, and the graded
//! isomorphism between the Chevalley algebra and the KKT algebra of the
//! coordinatized Jordan algebra.
//!
//! After rescaling `f_i ↦ c_i f_i` (`c_1 = 1`) there are `u_1i ∈ J_1i` with
//! `Q_1i(u_1i) = 1`. With `{x, y} = 2 x∘y` and `u_ij = {u_1i, u_1j}`:
//!
//! * `r = 2`: `J ≅ J_2(J_12, Q_12)`.
//! * `r ≥ 3`: `D = J_12` with `x·y = {{x, u_23}, {y, u_13}}`, unit `u_12`,
//!   and `J ≅ H_r(D)`. An element `x ∈ J_ij` is carried to `J_12` by
//!   `{x, u_2j}` (`i = 1`), `conj{x, u_1j}` (`i = 2`) or
//!   `conj{{x, u_1j}, u_2i}` (`i ≥ 3`) and placed in entry `(i, j)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::ChevalleyAlgebra;
use crate::composition::CompositionAlgebra;
use crate::error::{Error, Result};
use crate::jordan::{JordanAlgebra, JordanTable};
use crate::kkt::build_kkt_table;
use crate::lie::{LieAlgebra, SuiteReport};
use crate::linalg::{self, EchelonBasis, Matrix, SparseVec};
use crate::rational::{int, Rational};

#[derive(Clone, Debug)]
pub struct Coordinatization {
    /// `c_i` with `f_i ↦ c_i f_i`.
    pub scaling: Vec<Rational>,
    /// The Jordan algebra on `n` (root-vector basis) for the rescaled triple.
    pub source: JordanTable,
    pub target: Arc<JordanAlgebra>,
    /// `map[t][s]`: target coordinate `t` of source basis vector `s`.
    pub map: Matrix,
    /// `D` for `r ≥ 3`.
    pub composition: Option<Arc<CompositionAlgebra>>,
}

impl Coordinatization {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.map, x)
    }
}

fn unit_vec(n: usize, p: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[p] = Rational::one();
    v
}

/// A vector of nonzero `Q` in the span of `basis` (positions in `n`):
/// basis vectors first, then `b_a + s b_b` with `s ∈ [-3, 3]`.
fn nonisotropic(t: &JordanTable, i: usize, j: usize, basis: &[usize]) -> Result<(Vec<Rational>, Rational)> {
    let n = t.dim();
    let vecs: Vec<Vec<Rational>> = basis.iter().map(|&p| unit_vec(n, p)).collect();
    let gram = t.pierce_form(i, j, &vecs)?;
    let q = |c: &[Rational]| linalg::bilinear(&gram, c, c);
    let d = basis.len();
    let mut candidates: Vec<Vec<Rational>> = (0..d).map(|a| unit_vec(d, a)).collect();
    for a in 0..d {
        for b in 0..d {
            for s in (-3..=3).filter(|&s| s != 0) {
                if a != b {
                    let mut c = unit_vec(d, a);
                    c[b] = int(s);
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        let v = q(&c);
        if !v.is_zero() {
            let mut x = vec![Rational::zero(); n];
            for (k, &p) in basis.iter().enumerate() {
                x[p] = c[k].clone();
            }
            return Ok((x, v));
        }
    }
    Err(Error::Construction(format!("no vector of nonzero norm found in J_{}{}", i + 1, j + 1)))
}

pub fn coordinatize(ch: &ChevalleyAlgebra) -> Result<Coordinatization> {
    let r = ch.parabolic.degree();
    if r < 2 {
        return Err(Error::Unsupported("coordinatization needs at least two frame idempotents".into()));
    }
    let pierce = ch.pierce_roots();
    let component = |i: usize, j: usize| pierce.get(&(i.min(j), i.max(j))).cloned().unwrap_or_default();
    let base = super::jordan_from_roots(ch, &vec![Rational::one(); r])?;
    let mut scaling = vec![Rational::one(); r];
    let mut u1 = vec![Vec::new(); r];
    for i in 1..r {
        let (v, q) = nonisotropic(&base, 0, i, &component(0, i))?;
        scaling[i] = q.recip();
        u1[i] = v;
    }
    let t = super::jordan_from_roots(ch, &scaling)?;
    let n = t.dim();
    let brace = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        t.mul(x, y).into_iter().map(|c| c * int(2)).collect()
    };
    for i in 1..r {
        let sq = t.mul(&u1[i], &u1[i]);
        let target: Vec<Rational> = t.idempotent(0).iter().zip(t.idempotent(i)).map(|(a, b)| a + b).collect();
        if sq != target {
            return Err(Error::Construction(format!("u_1{} does not have norm 1 after rescaling", i + 1)));
        }
    }
    // u[i][j] for i < j
    let mut u = vec![vec![Vec::new(); r]; r];
    for j in 1..r {
        u[0][j] = u1[j].clone();
    }
    for i in 1..r {
        for j in i + 1..r {
            u[i][j] = brace(&u1[i], &u1[j]);
        }
    }
    let j12 = component(0, 1);
    let gram12 = t.pierce_form(0, 1, &j12.iter().map(|&p| unit_vec(n, p)).collect::<Vec<_>>())?;
    let mut map = Vec::new();
    let (target, composition) = if r == 2 {
        let target = Arc::new(JordanAlgebra::quadratic(gram12)?);
        let mut m = linalg::zeros(target.dim(), n);
        for (i, sc) in scaling.iter().enumerate() {
            for &p in &component(i, i) {
                m[i][p] = sc.clone();
            }
        }
        for (k, &p) in j12.iter().enumerate() {
            m[2 + k][p] = Rational::one();
        }
        map = m;
        (target, None)
    } else {
        let d = build_composition(&t, &j12, &gram12, &u, &brace)?;
        let target = Arc::new(JordanAlgebra::hermitian(r, d.algebra.clone())?);
        let mut m = linalg::zeros(target.dim(), n);
        for (i, sc) in scaling.iter().enumerate() {
            for &p in &component(i, i) {
                m[i][p] = sc.clone();
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let off = target.entry_offset(i, j);
                for &p in &component(i, j) {
                    let x = unit_vec(n, p);
                    let moved = match i {
                        0 if j == 1 => x,
                        0 => brace(&x, &u[1][j]),
                        1 => brace(&x, &u[0][j]),
                        _ => brace(&brace(&x, &u[0][j]), &u[1][i]),
                    };
                    let mut coords = d.coords(&moved)?;
                    if i >= 1 {
                        coords = d.algebra.conj(&coords);
                    }
                    for (k, c) in coords.into_iter().enumerate() {
                        m[off + k][p] = c;
                    }
                }
            }
        }
        map.extend(m);
        (target, Some(d.algebra))
    };
    let coord = Coordinatization { scaling, source: t, target, map, composition };
    check_homomorphism(&coord)?;
    Ok(coord)
}

struct Coordinates {
    algebra: Arc<CompositionAlgebra>,
    // basis of D as vectors in n, unit first
    basis: Vec<Vec<Rational>>,
    echelon: EchelonBasis,
}

impl Coordinates {
    fn coords(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let c = self
            .echelon
            .coords(&SparseVec::from_dense(x))
            .ok_or_else(|| Error::Construction("element does not lie in J_12".into()))?;
        Ok(c.to_dense(self.basis.len()))
    }
}

fn build_composition(
    t: &JordanTable,
    j12: &[usize],
    gram12: &Matrix,
    u: &[Vec<Vec<Rational>>],
    brace: &dyn Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Result<Coordinates> {
    let n = t.dim();
    let mut echelon = EchelonBasis::new();
    let mut basis = Vec::new();
    let unit = u[0][1].clone();
    for v in core::iter::once(unit.clone()).chain(j12.iter().map(|&p| unit_vec(n, p))) {
        if echelon.insert(&SparseVec::from_dense(&v)) {
            basis.push(v);
        }
    }
    let dim = basis.len();
    let mut coordinates = Coordinates {
        algebra: Arc::new(CompositionAlgebra::field()),
        basis: basis.clone(),
        echelon,
    };
    let mut table = vec![vec![SparseVec::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let p = brace(&brace(&basis[a], &u[1][2]), &brace(&basis[b], &u[0][2]));
            table[a][b] = SparseVec::from_dense(&coordinates.coords(&p)?);
        }
    }
    // T(x) = B(x, 1) with B(x, x) = 2 Q(x)
    let restrict = |v: &[Rational]| -> Vec<Rational> { j12.iter().map(|&p| v[p].clone()).collect() };
    let unit12 = restrict(&unit);
    let trace = basis.iter().map(|b| linalg::bilinear(gram12, &restrict(b), &unit12) * int(2)).collect();
    let labels: Vec<String> =
        (0..dim).map(|k| if k == 0 { String::from("1") } else { format!("d{k}") }).collect();
    coordinates.algebra = Arc::new(CompositionAlgebra::from_table(labels, table, trace)?);
    Ok(coordinates)
}

/// `φ(x ∘ y) = φ(x) ∘ φ(y)` on all basis pairs, and `φ` is bijective.
fn check_homomorphism(c: &Coordinatization) -> Result<()> {
    let n = c.source.dim();
    if c.target.dim() != n || linalg::rank(&c.map) != n {
        return Err(Error::Construction("coordinatization map is not bijective".into()));
    }
    let images: Vec<Vec<Rational>> = (0..n).map(|p| c.apply(&unit_vec(n, p))).collect();
    for a in 0..n {
        for b in a..n {
            let lhs = c.apply(&c.source.mul(&unit_vec(n, a), &unit_vec(n, b)));
            let rhs = c.target.table().mul(&images[a], &images[b]);
            if lhs != rhs {
                return Err(Error::Construction(format!(
                    "coordinatization does not preserve the product of basis vectors {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

/// The graded isomorphism `Ψ` from the rescaled Chevalley algebra to the
/// KKT algebra of the target, and the report of the structure-constant check.
#[derive(Clone, Debug)]
pub struct CrossValidation {
    /// `images[i]` = `Ψ(b_i)` in the KKT basis.
    pub images: Vec<SparseVec>,
    pub kkt: LieAlgebra,
    pub report: SuiteReport,
}

pub fn cross_validate(ch: &ChevalleyAlgebra, coord: &Coordinatization) -> Result<CrossValidation> {
    let g = ch.rescaled(&coord.scaling)?;
    let kkt = build_kkt_table(coord.target.table())?;
    let h = &kkt.algebra;
    if g.graded_dims() != h.graded_dims() {
        return Err(Error::Construction(format!(
            "graded dimensions differ: {:?} vs {:?}",
            g.graded_dims(),
            h.graded_dims()
        )));
    }
    let n = coord.source.dim();
    let n_idx = g.graded_indices(2);
    let nbar_idx = g.graded_indices(-2);
    let m_idx = g.graded_indices(0);
    let mut images = vec![SparseVec::zero(); g.dim()];
    let phi = |x: &[Rational], to_nbar: bool| -> SparseVec {
        let y = coord.apply(x);
        SparseVec::from_dense(&y).remap(|i| Some(if to_nbar { kkt.nbar_index(i) } else { kkt.n_index(i) }))
    };
    for (k, &i) in n_idx.iter().enumerate() {
        images[i] = phi(&unit_vec(n, k), false);
    }
    // n̄: Ψ(w(x)) = w_kkt(φ(x)) = (φ(x))‾
    let w = g.w_matrix();
    let w_inv = linalg::inverse(&w).ok_or_else(|| Error::Construction("w is not invertible".into()))?;
    for (k, &i) in nbar_idx.iter().enumerate() {
        let x: Vec<Rational> = w_inv.iter().map(|row| row[k].clone()).collect();
        images[i] = phi(&x, true);
    }
    // m: spanned by [x, w(y)]
    let mut echelon = EchelonBasis::new();
    let mut gen_images = Vec::new();
    'outer: for a in 0..n {
        for b in 0..n {
            let wy = g.w_map(&SparseVec::unit(n_idx[b]))?;
            let v = g.bracket(&SparseVec::unit(n_idx[a]), &wy);
            if echelon.insert(&v) {
                gen_images.push(h.bracket(&images[n_idx[a]], &phi(&unit_vec(n, b), true)));
                if echelon.dim() == m_idx.len() {
                    break 'outer;
                }
            }
        }
    }
    if echelon.dim() != m_idx.len() {
        return Err(Error::Construction("[n, w(n)] does not span m".into()));
    }
    for &i in &m_idx {
        let c = echelon.coords(&SparseVec::unit(i)).expect("m is spanned");
        let mut img = SparseVec::zero();
        for (k, ck) in c.iter() {
            img.add_scaled(ck, &gen_images[k]);
        }
        images[i] = img;
    }
    let psi = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::zero();
        for (i, c) in v.iter() {
            out.add_scaled(c, &images[i]);
        }
        out
    };
    let dim = g.dim();
    let cols: Matrix = images.iter().map(|v| v.to_dense(dim)).collect();
    let mut failure = None;
    let mut checked = 0u64;
    if linalg::rank(&cols) != dim {
        failure = Some(String::from("the basis map is not bijective"));
    }
    'check: for i in 0..dim {
        for j in i + 1..dim {
            if failure.is_some() {
                break 'check;
            }
            checked += 1;
            let lhs = psi(g.basis_bracket(i, j));
            let rhs = h.bracket(&images[i], &images[j]);
            if lhs != rhs {
                failure = Some(format!(
                    "Ψ[{}, {}] = {} but [Ψ{}, Ψ{}] = {}",
                    g.label(i),
                    g.label(j),
                    h.describe(&lhs),
                    g.label(i),
                    g.label(j),
                    h.describe(&rhs)
                ));
            }
        }
    }
    let report = SuiteReport::from_check("cross-validate", checked, failure);
    Ok(CrossValidation { images, kkt: kkt.algebra, report })
}
