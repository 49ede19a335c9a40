//! Lie algebras given by sparse structure constants on a labelled, graded
//! basis, with a distinguished sl₂-triple `(e, h, f)`, a frame of pairs
//! `(e_i, f_i)` and the Killing form normalized by `κ(f₁, e₁) = 1`.
//!
//! The verification suites (antisymmetry, Jacobi, grading, Killing
//! invariance, sl₂ relations, abelian radicals) report the first failure
//! with a named witness.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec};
use crate::rational::{self, half, int, Rational};
use crate::sample;

/// The sl₂-triple as coefficient vectors in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub e: SparseVec,
    pub h: SparseVec,
    pub f: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    degrees: Vec<i32>,
    // brackets[i][j] = [b_i, b_j]
    brackets: Vec<Vec<SparseVec>>,
    triple: Triple,
    frame: Vec<(SparseVec, SparseVec)>,
    killing: Matrix,
    normalized: bool,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<String>,
}

impl SuiteReport {
    pub fn pass(name: &str, checked: u64) -> Self {
        Self { name: name.into(), passed: true, checked, witness: None }
    }

    pub fn fail(name: &str, checked: u64, witness: String) -> Self {
        Self { name: name.into(), passed: false, checked, witness: Some(witness) }
    }

    pub fn from_check(name: &str, checked: u64, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name, checked),
            Some(w) => Self::fail(name, checked, w),
        }
    }
}

/// Basis-label prefix for a degree.
pub fn degree_prefix(degree: i32) -> &'static str {
    match degree {
        d if d < 0 => "nbar",
        0 => "m",
        _ => "n",
    }
}

/// Labels `nbar:k`, `m:k`, `n:k`, numbering within each degree.
pub fn graded_labels(degrees: &[i32]) -> Vec<String> {
    let mut counters: BTreeMap<i32, usize> = BTreeMap::new();
    degrees
        .iter()
        .map(|&d| {
            let c = counters.entry(d).or_insert(0);
            let label = format!("{}:{}", degree_prefix(d), c);
            *c += 1;
            label
        })
        .collect()
}

impl LieAlgebra {
    /// Assembles an algebra from a full bracket table. The Killing form is
    /// computed here; if `κ(f₁, e₁)` vanishes the raw trace form is kept
    /// and [`LieAlgebra::killing_normalized`] reports `false`.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<i32>,
        brackets: Vec<Vec<SparseVec>>,
        triple: Triple,
        frame: Vec<(SparseVec, SparseVec)>,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: degrees.len() });
        }
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: brackets.len() });
        }
        let out_of_range = |v: &SparseVec| v.max_index().is_some_and(|m| m >= n);
        if brackets.iter().flatten().any(out_of_range)
            || [&triple.e, &triple.h, &triple.f].into_iter().any(out_of_range)
            || frame.iter().any(|(e, f)| out_of_range(e) || out_of_range(f))
        {
            return Err(Error::IndexOutOfRange { index: n, bound: n });
        }
        let mut g = Self {
            labels,
            degrees,
            brackets,
            triple,
            frame,
            killing: Vec::new(),
            normalized: false,
        };
        let raw = g.trace_form();
        let scale = match g.frame.first() {
            Some((e1, f1)) => linalg::bilinear_sparse(&raw, f1, e1),
            None => Rational::zero(),
        };
        if scale.is_zero() {
            g.killing = raw;
        } else {
            let inv = scale.recip();
            g.killing = raw.into_iter().map(|r| r.into_iter().map(|c| c * &inv).collect()).collect();
            g.normalized = true;
        }
        Ok(g)
    }

    /// Assembles an algebra from the brackets `[b_i, b_j]` with `i < j`;
    /// the rest of the table follows from antisymmetry.
    pub fn from_upper(
        labels: Vec<String>,
        degrees: Vec<i32>,
        upper: &BTreeMap<(usize, usize), SparseVec>,
        triple: Triple,
        frame: Vec<(SparseVec, SparseVec)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut brackets = vec![vec![SparseVec::zero(); n]; n];
        for (&(i, j), v) in upper {
            if i >= j || j >= n {
                return Err(Error::IndexOutOfRange { index: j, bound: n });
            }
            brackets[j][i] = v.neg();
            brackets[i][j] = v.clone();
        }
        Self::new(labels, degrees, brackets, triple, frame)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    /// Basis indices of the given degree.
    pub fn graded_indices(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == degree).collect()
    }

    /// `(dim n̄, dim m, dim n)`.
    pub fn graded_dims(&self) -> (usize, usize, usize) {
        let count = |p: fn(i32) -> bool| self.degrees.iter().filter(|&&d| p(d)).count();
        (count(|d| d < 0), count(|d| d == 0), count(|d| d > 0))
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn frame(&self) -> &[(SparseVec, SparseVec)] {
        &self.frame
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// The nonzero brackets `[b_i, b_j]` with `i < j`.
    pub fn upper_brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> + '_ {
        (0..self.dim()).flat_map(move |i| {
            (i + 1..self.dim())
                .filter(move |&j| !self.brackets[i][j].is_zero())
                .map(move |j| (i, j, &self.brackets[i][j]))
        })
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.brackets[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad x` (columns are images of basis vectors).
    pub fn ad_matrix(&self, x: &SparseVec) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> =
            (0..n).map(|j| self.bracket(x, &SparseVec::unit(j)).to_dense(n)).collect();
        linalg::transpose(&cols)
    }

    /// `tr(ad b_a ∘ ad b_b)` on all basis pairs.
    pub fn trace_form(&self) -> Matrix {
        let n = self.dim();
        let mut k = linalg::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                // Σ_c Σ_d [b_b, b_c]_d [b_a, b_d]_c
                let mut acc = Rational::zero();
                for c in 0..n {
                    for (d, t) in self.brackets[b][c].iter() {
                        if let Some(s) = self.brackets[a][d].get_ref(c) {
                            acc += t * s;
                        }
                    }
                }
                k[b][a] = acc.clone();
                k[a][b] = acc;
            }
        }
        k
    }

    /// The Killing form, normalized so that `κ(f₁, e₁) = 1`.
    pub fn killing(&self) -> &Matrix {
        &self.killing
    }

    pub fn killing_normalized(&self) -> bool {
        self.normalized
    }

    pub fn kappa(&self, x: &SparseVec, y: &SparseVec) -> Rational {
        linalg::bilinear_sparse(&self.killing, x, y)
    }

    /// `w(x) = ½[f, [f, x]]` for `x` in the degree-2 part.
    pub fn w_map(&self, x: &SparseVec) -> Result<SparseVec> {
        if x.iter().any(|(i, _)| self.degrees[i] != 2) {
            return Err(Error::NotHomogeneous);
        }
        let f = &self.triple.f;
        Ok(self.bracket(f, &self.bracket(f, x)).scaled(&half()))
    }

    /// Matrix of `w` from the `n` basis to the `n̄` basis (in index order).
    pub fn w_matrix(&self) -> Matrix {
        let n = self.graded_indices(2);
        let nbar = self.graded_indices(-2);
        let cols: Vec<Vec<Rational>> = n
            .iter()
            .map(|&i| {
                let w = self.w_map(&SparseVec::unit(i)).expect("basis vector of n is homogeneous");
                nbar.iter().map(|&k| w.get(k)).collect()
            })
            .collect();
        linalg::transpose(&cols)
    }

    /// `[[b_i, b_j], b_k] + [[b_j, b_k], b_i] + [[b_k, b_i], b_j]`.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let term = |a: usize, b: usize, c: usize| self.bracket(&self.brackets[a][b], &SparseVec::unit(c));
        term(i, j, k).add(&term(j, k, i)).add(&term(k, i, j))
    }

    pub fn describe(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(i, c)| format!("{} {}", rational::to_string(c), self.labels[i]))
            .collect();
        parts.join(" + ")
    }

    fn triple_name(&self, i: usize, j: usize, k: usize) -> String {
        format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[k])
    }

    /// Jacobi on the given basis triples.
    pub fn check_jacobi(&self, triples: &[(usize, usize, usize)]) -> SuiteReport {
        for &(i, j, k) in triples {
            let d = self.jacobi_defect(i, j, k);
            if !d.is_zero() {
                return SuiteReport::fail(
                    "jacobi",
                    triples.len() as u64,
                    format!("triple {} has defect {}", self.triple_name(i, j, k), self.describe(&d)),
                );
            }
        }
        SuiteReport::pass("jacobi", triples.len() as u64)
    }

    pub fn check_antisymmetry(&self) -> SuiteReport {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                if self.brackets[i][j] != self.brackets[j][i].neg() {
                    return SuiteReport::fail(
                        "antisymmetry",
                        (n * (n + 1) / 2) as u64,
                        format!("[{}, {}] is not antisymmetric", self.labels[i], self.labels[j]),
                    );
                }
            }
        }
        SuiteReport::pass("antisymmetry", (n * (n + 1) / 2) as u64)
    }

    /// Brackets land in the sum of degrees, and vanish when that sum is out of range.
    pub fn check_grading(&self) -> SuiteReport {
        let n = self.dim();
        let checked = (n * n) as u64;
        for i in 0..n {
            for j in 0..n {
                let target = self.degrees[i] + self.degrees[j];
                if let Some((k, _)) = self.brackets[i][j].iter().find(|(k, _)| self.degrees[*k] != target) {
                    return SuiteReport::fail(
                        "grading",
                        checked,
                        format!(
                            "[{}, {}] has a component on {} of degree {}, expected degree {}",
                            self.labels[i], self.labels[j], self.labels[k], self.degrees[k], target
                        ),
                    );
                }
            }
        }
        // [h, x] = deg(x) x
        let h = &self.triple.h;
        for i in 0..n {
            let x = SparseVec::unit(i);
            let expected = x.scaled(&int(self.degrees[i] as i64));
            if self.bracket(h, &x) != expected {
                return SuiteReport::fail(
                    "grading",
                    checked,
                    format!("[h, {}] is not {} times {}", self.labels[i], self.degrees[i], self.labels[i]),
                );
            }
        }
        SuiteReport::pass("grading", checked + n as u64)
    }

    /// `κ([x, y], z) + κ(y, [x, z]) = 0` on the given basis triples.
    pub fn check_killing_invariance(&self, triples: &[(usize, usize, usize)]) -> SuiteReport {
        for &(i, j, k) in triples {
            let (y, z) = (SparseVec::unit(j), SparseVec::unit(k));
            let lhs = self.kappa(&self.brackets[i][j], &z) + self.kappa(&y, &self.brackets[i][k]);
            if !lhs.is_zero() {
                return SuiteReport::fail(
                    "killing",
                    triples.len() as u64,
                    format!(
                        "κ([x,y],z) + κ(y,[x,z]) = {} at (x,y,z) = {}",
                        rational::to_string(&lhs),
                        self.triple_name(i, j, k)
                    ),
                );
            }
        }
        SuiteReport::pass("killing", triples.len() as u64)
    }

    /// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`, for the triple and every frame pair.
    pub fn check_sl2(&self) -> SuiteReport {
        let mut pairs = vec![(self.triple.e.clone(), self.triple.f.clone(), String::from("(e, h, f)"))];
        for (i, (e, f)) in self.frame.iter().enumerate() {
            pairs.push((e.clone(), f.clone(), format!("frame pair {}", i + 1)));
        }
        let checked = 3 * pairs.len() as u64;
        for (idx, (e, f, name)) in pairs.iter().enumerate() {
            let h = self.bracket(e, f);
            if idx == 0 && h != self.triple.h {
                return SuiteReport::fail("sl2", checked, format!("[e, f] != h for {name}"));
            }
            if self.bracket(&h, e) != e.scaled(&int(2)) {
                return SuiteReport::fail("sl2", checked, format!("[h, e] != 2e for {name}"));
            }
            if self.bracket(&h, f) != f.scaled(&int(-2)) {
                return SuiteReport::fail("sl2", checked, format!("[h, f] != -2f for {name}"));
            }
        }
        SuiteReport::pass("sl2", checked)
    }

    /// `[n, n] = 0` and `[n̄, n̄] = 0`.
    pub fn check_abelian_radicals(&self) -> SuiteReport {
        let mut checked = 0;
        for d in [2, -2] {
            let idx = self.graded_indices(d);
            for &i in &idx {
                for &j in &idx {
                    checked += 1;
                    if !self.brackets[i][j].is_zero() {
                        return SuiteReport::fail(
                            "abelian",
                            checked,
                            format!("[{}, {}] != 0", self.labels[i], self.labels[j]),
                        );
                    }
                }
            }
        }
        SuiteReport::pass("abelian", checked)
    }

    /// `κ(e_i, f_j) = δ_ij`, κ vanishes on `n × n` and `n × m`, and pairs `n`
    /// with `n̄` nondegenerately.
    pub fn check_killing_pairing(&self) -> SuiteReport {
        let mut checked = 0u64;
        for (i, (ei, _)) in self.frame.iter().enumerate() {
            for (j, (_, fj)) in self.frame.iter().enumerate() {
                checked += 1;
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                if self.kappa(ei, fj) != expected {
                    return SuiteReport::fail(
                        "killing-pairing",
                        checked,
                        format!("κ(e_{}, f_{}) != {}", i + 1, j + 1, rational::to_string(&expected)),
                    );
                }
            }
        }
        let n = self.graded_indices(2);
        for &a in &n {
            for b in (0..self.dim()).filter(|&b| self.degrees[b] >= 0) {
                checked += 1;
                if !self.killing[a][b].is_zero() {
                    return SuiteReport::fail(
                        "killing-pairing",
                        checked,
                        format!("κ({}, {}) != 0", self.labels[a], self.labels[b]),
                    );
                }
            }
        }
        let nbar = self.graded_indices(-2);
        let pairing: Matrix =
            n.iter().map(|&a| nbar.iter().map(|&b| self.killing[a][b].clone()).collect()).collect();
        if n.len() != nbar.len() || linalg::rank(&pairing) != n.len() {
            return SuiteReport::fail("killing-pairing", checked, "κ pairs n and n̄ degenerately".into());
        }
        SuiteReport::pass("killing-pairing", checked + 1)
    }

    /// The same brackets with another triple and frame; the Killing form is
    /// renormalized to the new `κ(f₁, e₁)`.
    pub fn with_triple(&self, triple: Triple, frame: Vec<(SparseVec, SparseVec)>) -> Self {
        let mut g = self.clone();
        g.triple = triple;
        g.frame = frame;
        if let Some((e1, f1)) = g.frame.first() {
            let scale = linalg::bilinear_sparse(&g.killing, f1, e1);
            if !scale.is_zero() {
                let inv = scale.recip();
                g.killing = g.killing.iter().map(|r| r.iter().map(|c| c * &inv).collect()).collect();
            }
        }
        g
    }

    /// All basis triples `i < j < k`.
    pub fn all_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n * n / 6);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// All ordered basis triples.
    pub fn all_ordered_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect()
    }

    /// `count` basis triples drawn uniformly with replacement from a seeded stream.
    pub fn sampled_triples(&self, seed: u64, count: usize) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut rng = sample::rng(seed);
        (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    }

    /// Replaces one structure constant `c_{ij}^k` (and its antisymmetric
    /// partner); used for negative controls.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Rational) -> Result<Self> {
        let n = self.dim();
        if i >= n || j >= n || k >= n || i == j {
            return Err(Error::IndexOutOfRange { index: i.max(j).max(k), bound: n });
        }
        let mut brackets = self.brackets.clone();
        brackets[i][j].set(k, value.clone());
        brackets[j][i].set(k, -value);
        Self::new(self.labels.clone(), self.degrees.clone(), brackets, self.triple.clone(), self.frame.clone())
    }
}

/// `[X, Y]` for coefficient vectors over the same algebra.
pub fn bracket(g: &LieAlgebra, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
    for v in [x, y] {
        if let Some(m) = v.max_index() {
            if m >= g.dim() {
                return Err(Error::DimensionMismatch { expected: g.dim(), found: m + 1 });
            }
        }
    }
    Ok(g.bracket(x, y))
}

pub fn w_map(g: &LieAlgebra, x: &SparseVec) -> Result<SparseVec> {
    g.w_map(x)
}

pub fn killing_form(g: &LieAlgebra) -> &Matrix {
    g.killing()
}
