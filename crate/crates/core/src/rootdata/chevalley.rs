//! Chevalley bases of the split simple Lie algebras.
//!
//! Structure constants `N_{α,β}` are fixed by the extraspecial-pair method:
//! positive roots are totally ordered by height and then lexicographically;
//! for every non-simple positive root `ξ` the extraspecial pair `(α, β)`
//! (smallest `α`) gets `N_{α,β} = +(p + 1)`, where `p` is the largest
//! integer with `β − pα` a root. All other constants follow from
//!
//! ```text
//! N_{β,α} = −N_{α,β}        N_{−α,−β} = −N_{α,β}
//! N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)      (x + y + z = 0)
//! ```
//!
//! and the four-root relation applied to `α + β = α' + β'`.
//!
//! Brackets: `[h_i, e_α] = ⟨α, α_i^∨⟩ e_α`, `[e_α, e_β] = N_{α,β} e_{α+β}`,
//! `[e_α, e_{−α}] = h_α = Σ m_i(α) (α_i,α_i)/(α,α) h_i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::system::{add, height, neg, sub, Root, RootSystem};
use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};

/// `N_{α,β}` for positive `α, β` with `α + β` a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyConstants {
    positive: BTreeMap<(usize, usize), i64>,
}

impl ChevalleyConstants {
    pub fn compute(sys: &RootSystem) -> Result<Self> {
        let mut c = Self { positive: BTreeMap::new() };
        let roots = sys.positive_roots().to_vec();
        for (xi_idx, xi) in roots.iter().enumerate() {
            if height(xi) == 1 {
                continue;
            }
            // special pairs (α, β), α ≺ β, α + β = ξ, in increasing α
            let pairs: Vec<(usize, usize)> = (0..xi_idx)
                .filter_map(|a| {
                    let b = sys.positive_index(&sub(xi, &roots[a]))?;
                    (a < b).then_some((a, b))
                })
                .collect();
            let Some(&(a0, b0)) = pairs.first() else {
                return Err(Error::Construction(format!("root {xi:?} has no special pair")));
            };
            let p = sys.string_down(&roots[a0], &roots[b0]);
            c.set(a0, b0, p + 1);
            for &(a, b) in &pairs[1..] {
                let v = c.from_extraspecial(sys, &roots[a], &roots[b], &roots[a0], &roots[b0])?;
                c.set(a, b, v);
            }
        }
        Ok(c)
    }

    fn set(&mut self, a: usize, b: usize, v: i64) {
        self.positive.insert((a, b), v);
        self.positive.insert((b, a), -v);
    }

    fn len2(sys: &RootSystem, r: &[i64]) -> Rational {
        int(sys.inner(r, r))
    }

    /// `N_{α,β}` from the extraspecial pair `(α', β')` of `ξ = α + β`.
    fn from_extraspecial(&self, sys: &RootSystem, a: &[i64], b: &[i64], a1: &[i64], b1: &[i64]) -> Result<i64> {
        let xi = add(a, b);
        let mut bracket = Rational::zero();
        // N_{β,−α'} N_{α,−β'} / (β−α', β−α')
        let ba = sub(b, a1);
        if sys.is_root(&ba) {
            bracket += int(self.n(sys, b, &neg(a1))? * self.n(sys, a, &neg(b1))?) / Self::len2(sys, &ba);
        }
        // N_{−α',α} N_{β,−β'} / (α−α', α−α')
        let aa = sub(a, a1);
        if sys.is_root(&aa) {
            bracket += int(self.n(sys, &neg(a1), a)? * self.n(sys, b, &neg(b1))?) / Self::len2(sys, &aa);
        }
        let n1 = self.n(sys, a1, b1)?;
        let v = Self::len2(sys, &xi) * bracket / int(n1);
        if !v.is_integer() {
            return Err(Error::Construction(format!("non-integral structure constant {v} for {a:?} + {b:?}")));
        }
        i64::try_from(v.to_integer()).map_err(|_| Error::Construction("structure constant overflow".into()))
    }

    /// `N_{x,y}` for arbitrary roots with `x + y` a root.
    pub fn n(&self, sys: &RootSystem, x: &[i64], y: &[i64]) -> Result<i64> {
        let pos = |r: &[i64]| r.iter().all(|&c| c >= 0);
        let missing = || Error::Construction(format!("structure constant N({x:?}, {y:?}) requested before it is known"));
        match (pos(x), pos(y)) {
            (true, true) => {
                let (i, j) = (sys.positive_index(x).ok_or_else(missing)?, sys.positive_index(y).ok_or_else(missing)?);
                self.positive.get(&(i, j)).copied().ok_or_else(missing)
            }
            (false, false) => Ok(-self.n(sys, &neg(x), &neg(y))?),
            (false, true) => Ok(-self.n(sys, y, x)?),
            (true, false) => {
                let z = neg(&add(x, y));
                let ratio = |num: &[i64], den: &[i64]| frac(sys.inner(num, num), sys.inner(den, den));
                let v = if pos(&z) {
                    ratio(&z, y) * int(self.n(sys, &z, x)?)
                } else {
                    ratio(&z, x) * int(self.n(sys, y, &z)?)
                };
                if !v.is_integer() {
                    return Err(Error::Construction(format!("non-integral N({x:?}, {y:?})")));
                }
                Ok(i64::try_from(v.to_integer()).expect("small structure constant"))
            }
        }
    }

    /// Largest absolute value among the constants.
    pub fn max_abs(&self) -> i64 {
        self.positive.values().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.positive.iter().map(|(k, v)| (*k, *v))
    }
}

/// A Chevalley basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChevalleyVector {
    /// `e_α` for a (signed) root.
    Root(Root),
    /// `h_i` for a simple root index.
    Cartan(usize),
}

/// `h_α` in the basis `h_1..h_l`.
pub fn coroot(sys: &RootSystem, alpha: &[i64]) -> Vec<Rational> {
    let len = sys.inner(alpha, alpha);
    (0..sys.rank())
        .map(|i| {
            let si = sys.simple(i);
            frac(alpha[i] * sys.inner(&si, &si), len)
        })
        .collect()
}

/// The bracket of two Chevalley basis vectors as `(vector, coefficient)` terms.
pub fn chevalley_bracket(
    sys: &RootSystem,
    consts: &ChevalleyConstants,
    x: &ChevalleyVector,
    y: &ChevalleyVector,
) -> Result<Vec<(ChevalleyVector, Rational)>> {
    use ChevalleyVector::*;
    Ok(match (x, y) {
        (Cartan(_), Cartan(_)) => vec![],
        (Cartan(i), Root(a)) => {
            let c = sys.pairing(a, &sys.simple(*i));
            if c == 0 {
                vec![]
            } else {
                vec![(Root(a.clone()), int(c))]
            }
        }
        (Root(a), Cartan(i)) => {
            let c = sys.pairing(a, &sys.simple(*i));
            if c == 0 {
                vec![]
            } else {
                vec![(Root(a.clone()), int(-c))]
            }
        }
        (Root(a), Root(b)) => {
            let s = add(a, b);
            if s.iter().all(|&c| c == 0) {
                coroot(sys, a)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (Cartan(i), c))
                    .collect()
            } else if sys.is_root(&s) {
                vec![(Root(s), int(consts.n(sys, a, b)?))]
            } else {
                vec![]
            }
        }
    })
}
