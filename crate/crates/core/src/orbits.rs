//! Transvections, diagonalization, rank, orbit representatives, the torus
//! action on Pierce components, and local square classes.
//!
//! Hermitian transvections act by `x ↦ (X x) X*` with `X = 1 + u E_ij`,
//! evaluated entrywise in that parenthesization. On `J_2(V)`:
//!
//! ```text
//! x_12(u): (a, b, v) ↦ (a, b + a Q(u) + B(u, v), v + a u)
//! x_21(u): (a, b, v) ↦ (a + b Q(u) + B(u, v), b, v + b u)
//! ```
//!
//! Diagonalization pivot policy, at each position `k`: use `x_kk` if it is
//! nonzero; otherwise move a nonzero diagonal entry `x_ll` (`l > k`) into
//! place by a frame transposition; otherwise take the first nonzero
//! off-diagonal `s = x_pq` in reading order and the first basis vector `w`
//! of `D` with `T(w s̄) ≠ 0`, apply `x_pq(w)` to make `x_pp = T(w s̄)`, and
//! transpose `p` into place. Then clear row `k` with `x_jk(−x̄_kj / x_kk)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jordan::{DMatrix, JordanAlgebra, JordanElement, JordanKind};
use crate::rational::{self, Rational};

/// `x_ij(u)`; `u` lies in `D` for hermitian algebras and in `V` for `J_2(V)`.
/// Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub u: Vec<Rational>,
}

/// One logged step of a diagonalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Transvection(Transvection),
    /// Exchange of frame indices `i` and `j`.
    Swap(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub diagonal: Vec<Rational>,
    pub log: Vec<Step>,
}

fn check_index(j: &JordanAlgebra, i: usize) -> Result<()> {
    if i >= j.degree() {
        Err(Error::IndexOutOfRange { index: i, bound: j.degree() })
    } else {
        Ok(())
    }
}

/// Entrywise `(X x) X*` for `X = 1 + u E_ij`.
fn hermitian_transvection(x: &JordanElement, t: &Transvection) -> Result<JordanElement> {
    let j = x.algebra();
    let JordanKind::Hermitian { r, d } = j.kind() else { unreachable!() };
    let r = *r;
    if t.u.len() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: t.u.len() });
    }
    let m = j.to_matrix(x.coords());
    let ubar = d.conj(&t.u);
    // X x: row i gains u · (row j)
    let mut left = m.clone();
    for b in 0..r {
        let add = d.mul(&t.u, &m[t.j][b]);
        for (o, v) in left[t.i][b].iter_mut().zip(add) {
            *o += v;
        }
    }
    // (X x) X*: column i gains (column j) · ū
    let mut out = left.clone();
    for a in 0..r {
        let add = d.mul(&left[a][t.j], &ubar);
        for (o, v) in out[a][t.i].iter_mut().zip(add) {
            *o += v;
        }
    }
    JordanElement::new(j, j.from_matrix(&out))
}

/// Entrywise `X (x X*)`; equal to [`apply_transvection`] also for octonions.
pub fn apply_transvection_right(t: &Transvection, x: &JordanElement) -> Result<JordanElement> {
    let j = x.algebra();
    let JordanKind::Hermitian { r, d } = j.kind() else {
        return apply_transvection(t, x);
    };
    validate(j, t)?;
    let r = *r;
    let m = j.to_matrix(x.coords());
    let ubar = d.conj(&t.u);
    let mut right = m.clone();
    for a in 0..r {
        let add = d.mul(&m[a][t.j], &ubar);
        for (o, v) in right[a][t.i].iter_mut().zip(add) {
            *o += v;
        }
    }
    let mut out = right.clone();
    for b in 0..r {
        let add = d.mul(&t.u, &right[t.j][b]);
        for (o, v) in out[t.i][b].iter_mut().zip(add) {
            *o += v;
        }
    }
    JordanElement::new(j, j.from_matrix(&out))
}

fn validate(j: &JordanAlgebra, t: &Transvection) -> Result<()> {
    check_index(j, t.i)?;
    check_index(j, t.j)?;
    if t.i == t.j {
        return Err(Error::InvalidParameter("transvection indices must differ".into()));
    }
    Ok(())
}

pub fn apply_transvection(t: &Transvection, x: &JordanElement) -> Result<JordanElement> {
    let j = x.algebra();
    validate(j, t)?;
    match j.kind() {
        JordanKind::Hermitian { .. } => hermitian_transvection(x, t),
        JordanKind::Quadratic { gram } => {
            if t.u.len() != gram.len() {
                return Err(Error::DimensionMismatch { expected: gram.len(), found: t.u.len() });
            }
            let (a, b) = (x.diag(0), x.diag(1));
            let v = x.vector_part();
            let shift = j.quadratic_form(&t.u);
            let pairing = j.polar_form(&t.u, v);
            // the diagonal slot that is fixed scales u into v
            let (fixed, moved) = if t.i == 0 { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            let new_moved = moved + &fixed * shift + pairing;
            let nv: Vec<Rational> = v.iter().zip(&t.u).map(|(vi, ui)| vi + &fixed * ui).collect();
            let (na, nb) = if t.i == 0 { (a, new_moved) } else { (new_moved, b) };
            JordanElement::quadratic(j, na, nb, &nv)
        }
    }
}

/// Exchanges frame indices `p` and `q`.
pub fn apply_swap(p: usize, q: usize, x: &JordanElement) -> Result<JordanElement> {
    let j = x.algebra();
    check_index(j, p)?;
    check_index(j, q)?;
    match j.kind() {
        JordanKind::Hermitian { r, .. } => {
            let m = j.to_matrix(x.coords());
            let sigma = |a: usize| if a == p { q } else if a == q { p } else { a };
            let out: DMatrix = (0..*r).map(|a| (0..*r).map(|b| m[sigma(a)][sigma(b)].clone()).collect()).collect();
            JordanElement::new(j, j.from_matrix(&out))
        }
        JordanKind::Quadratic { .. } => {
            if p == q {
                return Ok(x.clone());
            }
            JordanElement::quadratic(j, x.diag(1), x.diag(0), x.vector_part())
        }
    }
}

pub fn apply_step(step: &Step, x: &JordanElement) -> Result<JordanElement> {
    match step {
        Step::Transvection(t) => apply_transvection(t, x),
        Step::Swap(p, q) => apply_swap(*p, *q, x),
    }
}

/// Applies a log in order.
pub fn replay(log: &[Step], x: &JordanElement) -> Result<JordanElement> {
    log.iter().try_fold(x.clone(), |acc, s| apply_step(s, &acc))
}

fn step(s: Step, cur: &mut JordanElement, log: &mut Vec<Step>) {
    *cur = apply_step(&s, cur).expect("logged step is valid");
    log.push(s);
}

fn rank_result(x: &JordanElement, log: Vec<Step>) -> RankResult {
    let diagonal: Vec<Rational> = (0..x.algebra().degree()).map(|i| x.diag(i)).collect();
    let rank = diagonal.iter().filter(|c| !c.is_zero()).count();
    RankResult { rank, diagonal, log }
}

pub fn diagonalize(x: &JordanElement) -> RankResult {
    match x.algebra().kind() {
        JordanKind::Hermitian { .. } => diagonalize_hermitian(x),
        JordanKind::Quadratic { .. } => diagonalize_quadratic(x),
    }
}

fn diagonalize_hermitian(x: &JordanElement) -> RankResult {
    let j = x.algebra().clone();
    let JordanKind::Hermitian { r, d } = j.kind() else { unreachable!() };
    let (r, n) = (*r, d.dim());
    let mut cur = x.clone();
    let mut log = Vec::new();
    for k in 0..r {
        if cur.diag(k).is_zero() {
            if let Some(l) = (k + 1..r).find(|&l| !cur.diag(l).is_zero()) {
                step(Step::Swap(k, l), &mut cur, &mut log);
            } else {
                let pivot = (k..r)
                    .flat_map(|p| (p + 1..r).map(move |q| (p, q)))
                    .find(|&(p, q)| !d.is_zero(&cur.entry(p, q)));
                let Some((p, q)) = pivot else { break };
                let s = cur.entry(p, q);
                let sbar = d.conj(&s);
                let w = (0..n)
                    .map(|c| d.basis(c))
                    .find(|w| !d.trace(&d.mul(w, &sbar)).is_zero())
                    .expect("the trace form is nondegenerate");
                step(Step::Transvection(Transvection { i: p, j: q, u: w }), &mut cur, &mut log);
                debug_assert!(!cur.diag(p).is_zero());
                if p != k {
                    step(Step::Swap(k, p), &mut cur, &mut log);
                }
            }
        }
        let a = cur.diag(k);
        for jj in k + 1..r {
            let s = cur.entry(k, jj);
            if d.is_zero(&s) {
                continue;
            }
            let u: Vec<Rational> = d.conj(&s).iter().map(|c| -c / &a).collect();
            step(Step::Transvection(Transvection { i: jj, j: k, u }), &mut cur, &mut log);
        }
    }
    rank_result(&cur, log)
}

fn diagonalize_quadratic(x: &JordanElement) -> RankResult {
    let j = x.algebra().clone();
    let dim_v = x.vector_part().len();
    let mut cur = x.clone();
    let mut log = Vec::new();
    let is_zero = |v: &[Rational]| v.iter().all(|c| c.is_zero());
    if !is_zero(cur.vector_part()) {
        if cur.diag(0).is_zero() && cur.diag(1).is_zero() {
            let v = cur.vector_part().to_vec();
            let u = (0..dim_v)
                .map(|c| {
                    let mut e = vec![Rational::zero(); dim_v];
                    e[c] = Rational::one();
                    e
                })
                .find(|u| !j.polar_form(u, &v).is_zero())
                .expect("the quadratic form is nondegenerate");
            step(Step::Transvection(Transvection { i: 0, j: 1, u }), &mut cur, &mut log);
        }
        let (i, jj) = if !cur.diag(0).is_zero() { (0, 1) } else { (1, 0) };
        let a = cur.diag(i);
        let u: Vec<Rational> = cur.vector_part().iter().map(|c| -c / &a).collect();
        step(Step::Transvection(Transvection { i, j: jj, u }), &mut cur, &mut log);
    }
    rank_result(&cur, log)
}

/// `e_1 + ⋯ + e_j` for rank `j < r`; `e_1 + ⋯ + e_{r−1} + a e_r` with `a`
/// the product of the diagonal entries for rank `r`.
pub fn orbit_representative(algebra: &Arc<JordanAlgebra>, res: &RankResult) -> Result<JordanElement> {
    let r = algebra.degree();
    let mut diag = vec![Rational::zero(); r];
    if res.rank < r {
        for d in diag.iter_mut().take(res.rank) {
            *d = Rational::one();
        }
    } else {
        for d in diag.iter_mut().take(r - 1) {
            *d = Rational::one();
        }
        diag[r - 1] = res.diagonal.iter().fold(Rational::one(), |acc, c| acc * c);
    }
    JordanElement::diagonal(algebra, &diag)
}

/// Scales `J_ii` by `t²`, `J_ij` (`j ≠ i`) by `t`, and fixes the rest.
pub fn torus_scale(i: usize, t: &Rational, x: &JordanElement) -> Result<JordanElement> {
    let j = x.algebra();
    check_index(j, i)?;
    if t.is_zero() {
        return Err(Error::InvalidParameter("torus parameter must be nonzero".into()));
    }
    let mut c = x.coords().to_vec();
    let t2 = t * t;
    c[i] *= &t2;
    match j.kind() {
        JordanKind::Hermitian { r, d } => {
            for k in (0..*r).filter(|&k| k != i) {
                let off = j.entry_offset(i.min(k), i.max(k));
                for v in &mut c[off..off + d.dim()] {
                    *v *= t;
                }
            }
        }
        JordanKind::Quadratic { .. } => {
            for v in &mut c[2..] {
                *v *= t;
            }
        }
    }
    JordanElement::new(j, c)
}

/// A completion of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl Place {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inf" | "∞" => Ok(Place::Infinity),
            _ => {
                let p: u64 = s.parse().map_err(|_| Error::InvalidParameter(format!("place {s}")))?;
                if !is_prime(p) {
                    return Err(Error::InvalidParameter(format!("{p} is not prime")));
                }
                Ok(Place::Prime(p))
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The class of a nonzero rational in `Q_v^× / (Q_v^×)²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalInvariant {
    Sign { positive: bool },
    Odd { p: u64, odd_valuation: bool, residue: bool },
    Two { odd_valuation: bool, unit_mod8: u8 },
}

impl fmt::Display for LocalInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalInvariant::Sign { positive } => write!(f, "{}", if *positive { "+" } else { "-" }),
            LocalInvariant::Odd { odd_valuation, residue, .. } => {
                write!(f, "v{},{}", u8::from(*odd_valuation), if *residue { "qr" } else { "nqr" })
            }
            LocalInvariant::Two { odd_valuation, unit_mod8 } => {
                write!(f, "v{},u{}", u8::from(*odd_valuation), unit_mod8)
            }
        }
    }
}

pub fn local_class(a: &Rational, place: Place) -> Result<LocalInvariant> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("local class of zero".into()));
    }
    match place {
        Place::Infinity => Ok(LocalInvariant::Sign { positive: a.is_positive() }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let (num, den) = (a.numer().abs(), a.denom().clone());
            let (vn, vd) = (rational::valuation(&num, p), rational::valuation(&den, p));
            let pb = BigInt::from(p);
            let strip = |n: &BigInt, v: u32| -> BigInt { n / num_traits::pow(pb.clone(), v as usize) };
            // n/d and n·d share a square class
            let sign = BigInt::from(if a.is_negative() { -1 } else { 1 });
            let unit: BigInt = strip(&num, vn) * strip(&den, vd) * sign;
            let odd_valuation = (vn + vd) % 2 == 1;
            if p == 2 {
                let m = unit.mod_floor(&BigInt::from(8));
                let unit_mod8 = u8::try_from(m).expect("residue below 8");
                Ok(LocalInvariant::Two { odd_valuation, unit_mod8 })
            } else {
                let e = BigInt::from((p - 1) / 2);
                let residue = unit.mod_floor(&pb).modpow(&e, &pb).is_one();
                Ok(LocalInvariant::Odd { p, odd_valuation, residue })
            }
        }
    }
}

/// Classes of `a` at each place, keyed by the place's name.
pub fn local_classes(a: &Rational, places: &[Place]) -> Result<Vec<(String, String)>> {
    places.iter().map(|&p| Ok((format!("{p}"), format!("{}", local_class(a, p)?)))).collect()
}

#[cfg(test)]
mod tests;
