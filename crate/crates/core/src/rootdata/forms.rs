//! The quadratic forms `Q_ij(x) = ½ κ([f_i, x], [f_j, x])` on the Pierce
//! components `J_ij`, and constructive Witt decomposition over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::rational::{int, sqrt_exact, Rational};

/// `Q_ij` on `J_ij`, `i < j`, with Gram matrix `g` so that `Q(x) = xᵀ g x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm {
    pub i: usize,
    pub j: usize,
    /// Positions in `n` of the root vectors spanning `J_ij`.
    pub basis: Vec<usize>,
    pub gram: Matrix,
}

impl QForm {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::bilinear(&self.gram, x, x)
    }

    /// Coordinates on `n` of `Σ x_k b_k`.
    pub fn embed(&self, x: &[Rational], n_dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n_dim];
        for (c, &p) in x.iter().zip(&self.basis) {
            out[p] = c.clone();
        }
        out
    }

    /// Coordinates of an element of `n` on this component's basis.
    pub fn restrict(&self, v: &[Rational]) -> Vec<Rational> {
        self.basis.iter().map(|&p| v[p].clone()).collect()
    }
}

/// The forms `Q_ij` for all `i < j`, from the Killing form of the algebra
/// with triple rescaled by `scaling`.
pub fn q_forms(ch: &ChevalleyAlgebra, scaling: &[Rational]) -> Result<Vec<QForm>> {
    let g = ch.rescaled(scaling)?;
    let pierce = ch.pierce_roots();
    let r = ch.parabolic.degree();
    let quarter = Rational::new(1.into(), 4.into());
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let basis = pierce.get(&(i, j)).cloned().unwrap_or_default();
            let (fi, fj) = (&g.frame()[i].1, &g.frame()[j].1);
            let vecs: Vec<SparseVec> = basis.iter().map(|&p| SparseVec::unit(ch.n_index(p))).collect();
            let left: Vec<SparseVec> = vecs.iter().map(|x| g.bracket(fi, x)).collect();
            let right: Vec<SparseVec> = vecs.iter().map(|x| g.bracket(fj, x)).collect();
            let d = basis.len();
            let mut gram = linalg::zeros(d, d);
            for a in 0..d {
                for b in a..d {
                    let v = (g.kappa(&left[a], &right[b]) + g.kappa(&left[b], &right[a])) * &quarter;
                    gram[b][a] = v.clone();
                    gram[a][b] = v;
                }
            }
            out.push(QForm { i, j, basis, gram });
        }
    }
    Ok(out)
}

/// `V = H_1 ⊥ … ⊥ H_k ⊥ V_0` with hyperbolic pairs `(v, w)`:
/// `Q(v) = Q(w) = 0`, `B(v, w) = 1`, and `V_0` anisotropic as far as the
/// bounded search can tell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub planes: Vec<(Vec<Rational>, Vec<Rational>)>,
    pub anisotropic: Vec<Vec<Rational>>,
}

fn form(g: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    linalg::bilinear(g, x, y)
}

fn combine(x: &[Rational], s: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + s * b).collect()
}

/// A nonzero isotropic vector in `span(w)`, searching basis vectors, then
/// `w_a + t w_b`, then `w_a + s w_b + t w_c` with `s ∈ [-3, 3]`, solving for `t`.
fn find_isotropic(g: &Matrix, w: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    if let Some(v) = w.iter().find(|v| form(g, v, v).is_zero()) {
        return Some(v.clone());
    }
    // Q(x + t y) = Q(x) + 2t B(x,y) + t² Q(y), with Q(y) ≠ 0 here
    let solve = |x: &[Rational], y: &[Rational]| -> Option<Vec<Rational>> {
        let (qx, bxy, qy) = (form(g, x, x), form(g, x, y), form(g, y, y));
        if qy.is_zero() {
            return None;
        }
        let s = sqrt_exact(&(&bxy * &bxy - &qx * &qy))?;
        let t = (-bxy + s) / qy;
        let v = combine(x, &t, y);
        (!v.iter().all(|c| c.is_zero())).then_some(v)
    };
    for a in 0..w.len() {
        for b in 0..w.len() {
            if a != b {
                if let Some(v) = solve(&w[a], &w[b]) {
                    return Some(v);
                }
            }
        }
    }
    for a in 0..w.len() {
        for b in 0..w.len() {
            for c in 0..w.len() {
                if a == b || b == c || a == c {
                    continue;
                }
                for s in -3..=3 {
                    let x = combine(&w[a], &int(s), &w[b]);
                    if let Some(v) = solve(&x, &w[c]) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

pub fn witt_decomposition(gram: &Matrix) -> Result<WittDecomposition> {
    let n = gram.len();
    if linalg::determinant(gram).is_zero() {
        return Err(Error::InvalidParameter("quadratic form is degenerate".into()));
    }
    let mut space: Vec<Vec<Rational>> = linalg::identity(n);
    let mut planes = Vec::new();
    while space.len() >= 2 {
        let Some(v) = find_isotropic(gram, &space) else { break };
        let w = space
            .iter()
            .find(|w| !form(gram, &v, w).is_zero())
            .ok_or_else(|| Error::Construction("restricted form is degenerate".into()))?
            .clone();
        let bvw = form(gram, &v, &w);
        let w = combine(&w, &(-form(gram, &w, &w) / (bvw.clone() * int(2))), &v);
        let w: Vec<Rational> = w.iter().map(|c| c / &bvw).collect();
        // orthogonal complement of span(v, w) inside the current space
        let constraints: Matrix = [&v, &w]
            .iter()
            .map(|u| space.iter().map(|s| form(gram, u, s)).collect())
            .collect();
        let coeffs = linalg::nullspace(&constraints, space.len());
        space = coeffs
            .iter()
            .map(|c| {
                let mut out = vec![Rational::zero(); n];
                for (k, ck) in c.iter().enumerate() {
                    for (o, s) in out.iter_mut().zip(&space[k]) {
                        *o += ck * s;
                    }
                }
                out
            })
            .collect();
        planes.push((v, w));
    }
    Ok(WittDecomposition { planes, anisotropic: space })
}
