//! Jordan algebras given by structure constants on a basis, together with a
//! frame of orthogonal idempotents. All generic algorithms (powers, generic
//! minimal polynomial, norm, trace, inverse, Pierce decomposition) live here
//! so that they apply equally to the matrix models and to algebras read off
//! from root data.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix, SparseVec};
use crate::rational::{half, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanTable {
    dim: usize,
    // products[a][b] = b_a ∘ b_b
    products: Vec<Vec<SparseVec>>,
    identity: Vec<Rational>,
    frame: Vec<Vec<Rational>>,
    integral: Option<IntegralTable>,
}

/// The structure constants over a common denominator, for the `i128` fast
/// path of [`JordanTable::mul`].
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntegralTable {
    denom: i128,
    products: Vec<Vec<Vec<(usize, i128)>>>,
}

const FAST_DENOM_LIMIT: i128 = 1 << 40;

impl IntegralTable {
    fn new(products: &[Vec<SparseVec>]) -> Option<Self> {
        let mut denom = 1i128;
        for c in products.iter().flatten().flat_map(|v| v.iter().map(|(_, c)| c)) {
            denom = denom.lcm(&c.denom().to_i128()?);
            if denom > FAST_DENOM_LIMIT {
                return None;
            }
        }
        let products = products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|(k, c)| Some((k, c.numer().to_i128()? * (denom / c.denom().to_i128()?)))).collect())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self { denom, products })
    }
}

/// Integer numerators over a common denominator, if everything is small.
fn integral(x: &[Rational]) -> Option<(Vec<i128>, i128)> {
    let mut denom = 1i128;
    for c in x.iter().filter(|c| !c.is_zero()) {
        denom = denom.lcm(&c.denom().to_i128()?);
        if denom > FAST_DENOM_LIMIT {
            return None;
        }
    }
    let nums = x.iter().map(|c| c.numer().to_i128()?.checked_mul(denom / c.denom().to_i128()?)).collect::<Option<_>>()?;
    Some((nums, denom))
}

/// Generic minimal polynomial data of an element. Polynomials are monic and
/// stored by ascending degree, leading coefficient included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPoly {
    pub minimal: Vec<Rational>,
    pub characteristic: Vec<Rational>,
}

impl MinPoly {
    /// `T_J`: minus the subleading characteristic coefficient.
    pub fn trace(&self) -> Rational {
        let r = self.characteristic.len() - 1;
        -self.characteristic[r - 1].clone()
    }

    /// `N_J = (-1)^r × constant coefficient`.
    pub fn norm(&self) -> Rational {
        let r = self.characteristic.len() - 1;
        let c0 = self.characteristic[0].clone();
        if r % 2 == 0 {
            c0
        } else {
            -c0
        }
    }
}

/// Pierce decomposition relative to the frame; keys are `(i, j)` with
/// `i <= j`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PierceDecomposition {
    pub components: BTreeMap<(usize, usize), Vec<Vec<Rational>>>,
}

impl PierceDecomposition {
    pub fn dim(&self, i: usize, j: usize) -> usize {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.components.get(&key).map_or(0, |b| b.len())
    }

    /// The common dimension of the off-diagonal components, if they agree.
    pub fn off_diagonal_dim(&self) -> Option<usize> {
        let mut dims = self.components.iter().filter(|((i, j), _)| i != j).map(|(_, b)| b.len());
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|b| b.len()).sum()
    }
}

impl JordanTable {
    pub fn new(
        products: Vec<Vec<SparseVec>>,
        identity: Vec<Rational>,
        frame: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let dim = products.len();
        if products.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: products.len() });
        }
        if identity.len() != dim || frame.iter().any(|e| e.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: identity.len() });
        }
        if frame.is_empty() {
            return Err(Error::InvalidParameter("frame must contain at least one idempotent".into()));
        }
        let integral = IntegralTable::new(&products);
        Ok(Self { dim, products, identity, frame, integral })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree `r`: the number of frame idempotents.
    pub fn degree(&self) -> usize {
        self.frame.len()
    }

    pub fn identity(&self) -> &[Rational] {
        &self.identity
    }

    pub fn frame(&self) -> &[Vec<Rational>] {
        &self.frame
    }

    pub fn idempotent(&self, i: usize) -> &[Rational] {
        &self.frame[i]
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.products[a][b]
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim]
    }

    pub fn basis(&self, k: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[k] = Rational::one();
        v
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        if let Some(out) = self.mul_integral(x, y) {
            return out;
        }
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, t) in self.products[a][b].iter() {
                    out[k] += &c * t;
                }
            }
        }
        out
    }

    /// Checked `i128` accumulation; `None` on overflow or large denominators.
    fn mul_integral(&self, x: &[Rational], y: &[Rational]) -> Option<Vec<Rational>> {
        let table = self.integral.as_ref()?;
        let (xs, dx) = integral(x)?;
        let (ys, dy) = integral(y)?;
        let mut acc = vec![0i128; self.dim];
        for (a, &xa) in xs.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (b, &yb) in ys.iter().enumerate().filter(|(_, c)| **c != 0) {
                let c = xa.checked_mul(yb)?;
                for &(k, t) in &table.products[a][b] {
                    acc[k] = acc[k].checked_add(c.checked_mul(t)?)?;
                }
            }
        }
        let denom = BigInt::from(dx) * BigInt::from(dy) * BigInt::from(table.denom);
        Some(acc.into_iter().map(|n| Rational::new(BigInt::from(n), denom.clone())).collect())
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                out.add_scaled(&(xa * yb), &self.products[a][b]);
            }
        }
        out
    }

    /// Jordan powers `x^0 = e, x^k = x ∘ x^(k-1)`, up to and including `n`.
    pub fn powers(&self, x: &[Rational], n: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.identity.clone());
        for k in 1..=n {
            let next = self.mul(x, &out[k - 1]);
            out.push(next);
        }
        out
    }

    /// Evaluates a polynomial (ascending coefficients) at `x`.
    pub fn eval_poly(&self, poly: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let pows = self.powers(x, poly.len().saturating_sub(1));
        let mut out = self.zero();
        for (c, p) in poly.iter().zip(&pows) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(p) {
                *o += c * v;
            }
        }
        out
    }

    /// Least-degree monic polynomial annihilating `x`.
    pub fn minimal_polynomial(&self, x: &[Rational]) -> Vec<Rational> {
        let mut basis = EchelonBasis::new();
        let mut power = self.identity.clone();
        let mut degree = 0;
        loop {
            let v = SparseVec::from_dense(&power);
            if let Some(coords) = basis.coords(&v) {
                let mut poly: Vec<Rational> = (0..degree).map(|k| -coords.get(k)).collect();
                poly.push(Rational::one());
                return poly;
            }
            basis.insert(&v);
            degree += 1;
            assert!(degree <= self.dim + 1, "power sequence failed to become dependent");
            power = self.mul(x, &power);
        }
    }

    /// Generic minimal polynomial: the minimal polynomial of `x` together
    /// with the degree-`r` characteristic polynomial.
    ///
    /// When the minimal polynomial has degree below `r`, the characteristic
    /// coefficients are polynomial functions evaluated along the line
    /// `x + t·y` with `y = Σ (i+1) e_i`; each coefficient is interpolated
    /// from `r + 1` generic points and read off at `t = 0`.
    pub fn generic_min_poly(&self, x: &[Rational]) -> MinPoly {
        let r = self.degree();
        let minimal = self.minimal_polynomial(x);
        if minimal.len() == r + 1 {
            return MinPoly { characteristic: minimal.clone(), minimal };
        }
        let direction = self.generic_direction();
        // Discriminant of the restricted characteristic polynomial has degree
        // at most 2r(r-1) in t, which bounds the number of bad points.
        let max_attempts = (r + 1) + 2 * r * (r - 1) + 1;
        let mut points: Vec<(Rational, Vec<Rational>)> = Vec::with_capacity(r + 1);
        let mut t = 1i64;
        while points.len() < r + 1 {
            assert!((t as usize) <= max_attempts, "no generic points found along the line");
            let tq = int(t);
            let z: Vec<Rational> = x.iter().zip(&direction).map(|(a, b)| a + &tq * b).collect();
            let m = self.minimal_polynomial(&z);
            if m.len() == r + 1 {
                points.push((tq, m));
            }
            t += 1;
        }
        let characteristic = (0..=r)
            .map(|k| {
                let samples: Vec<(Rational, Rational)> =
                    points.iter().map(|(t, p)| (t.clone(), p[k].clone())).collect();
                interpolate_at_zero(&samples)
            })
            .collect();
        MinPoly { minimal, characteristic }
    }

    fn generic_direction(&self) -> Vec<Rational> {
        let mut y = self.zero();
        for (i, e) in self.frame.iter().enumerate() {
            let c = int(i as i64 + 1);
            for (a, b) in y.iter_mut().zip(e) {
                *a += &c * b;
            }
        }
        y
    }

    pub fn trace(&self, x: &[Rational]) -> Rational {
        self.generic_min_poly(x).trace()
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.generic_min_poly(x).norm()
    }

    /// `x^{-1} = -(x^{r-1} + c_{r-1} x^{r-2} + … + c_1 e) / c_0`.
    pub fn inverse(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let chi = self.generic_min_poly(x).characteristic;
        let c0 = chi[0].clone();
        if c0.is_zero() {
            return Err(Error::SingularElement);
        }
        let shifted = &chi[1..];
        let scale = -c0.recip();
        Ok(self.eval_poly(shifted, x).into_iter().map(|v| v * &scale).collect())
    }

    /// Matrix of `L_x: z ↦ x ∘ z` in the basis (columns are images).
    pub fn left_mul_matrix(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|b| self.mul(x, &self.basis(b))).collect();
        linalg::transpose(&cols)
    }

    /// Eigenspace decomposition under the commuting operators `L_{e_i}`.
    pub fn pierce(&self) -> PierceDecomposition {
        let r = self.degree();
        let n = self.dim;
        let shifted = |i: usize, lambda: &Rational| -> Matrix {
            let mut m = self.left_mul_matrix(&self.frame[i]);
            for (k, row) in m.iter_mut().enumerate() {
                row[k] -= lambda;
            }
            m
        };
        let mut components = BTreeMap::new();
        for i in 0..r {
            components.insert((i, i), linalg::nullspace(&shifted(i, &Rational::one()), n));
            for j in i + 1..r {
                let mut stacked = shifted(i, &half());
                stacked.extend(shifted(j, &half()));
                components.insert((i, j), linalg::nullspace(&stacked, n));
            }
        }
        PierceDecomposition { components }
    }

    /// Gram matrix `g` of the form with `x ∘ x = (xᵀ g x)(e_i + e_j)` on the
    /// given basis of `J_ij`, found by coefficient comparison. Fails if some
    /// product leaves `span(e_i + e_j)`.
    pub fn pierce_form(&self, i: usize, j: usize, basis: &[Vec<Rational>]) -> Result<Matrix> {
        let target: Vec<Rational> =
            self.frame[i].iter().zip(&self.frame[j]).map(|(a, b)| a + b).collect();
        let pivot = target
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Construction("degenerate frame".into()))?;
        let mut gram = linalg::zeros(basis.len(), basis.len());
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate().skip(a) {
                let p = self.mul(u, v);
                let c = &p[pivot] / &target[pivot];
                if p.iter().zip(&target).any(|(x, t)| *x != &c * t) {
                    return Err(Error::Construction(alloc::format!(
                        "product of Pierce basis vectors {a},{b} leaves span(e_{i} + e_{j})"
                    )));
                }
                gram[a][b] = c.clone();
                gram[b][a] = c;
            }
        }
        Ok(gram)
    }
}

/// Lagrange interpolation of the unique polynomial through `samples`, evaluated at 0.
fn interpolate_at_zero(samples: &[(Rational, Rational)]) -> Rational {
    let mut acc = Rational::zero();
    for (k, (tk, yk)) in samples.iter().enumerate() {
        let mut weight = Rational::one();
        for (m, (tm, _)) in samples.iter().enumerate() {
            if m != k {
                weight *= tm / (tm - tk);
            }
        }
        acc += yk * weight;
    }
    acc
}
