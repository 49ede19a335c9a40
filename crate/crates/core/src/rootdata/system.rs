//! Root systems of types A, B, C, D and E7 in the basis of simple roots,
//! numbered as in Bourbaki.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E7,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E7" | "E" => Ok(Self::E7),
            _ => Err(Error::Unsupported(format!("root system type {s}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E7 => "E",
        }
    }
}

/// A root as integer coefficients on the simple roots.
pub type Root = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    // (α_i, α_j), scaled to integers with short roots of squared length 2
    // (1 for the short roots of B_n)
    gram: Vec<Vec<i64>>,
    positive: Vec<Root>,
    lookup: BTreeMap<Root, usize>,
}

fn chain_gram(rank: usize, diag: impl Fn(usize) -> i64, link: impl Fn(usize) -> i64) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; rank]; rank];
    for i in 0..rank {
        g[i][i] = diag(i);
        if i + 1 < rank {
            g[i][i + 1] = link(i);
            g[i + 1][i] = link(i);
        }
    }
    g
}

impl RootSystem {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let bad = |min: usize| -> Result<()> {
            if rank < min {
                Err(Error::Unsupported(format!("type {}{} (rank must be at least {min})", kind.name(), rank)))
            } else {
                Ok(())
            }
        };
        let gram = match kind {
            CartanType::A => {
                bad(1)?;
                chain_gram(rank, |_| 2, |_| -1)
            }
            CartanType::B => {
                bad(2)?;
                chain_gram(rank, |i| if i + 1 == rank { 1 } else { 2 }, |_| -1)
            }
            CartanType::C => {
                bad(2)?;
                chain_gram(rank, |i| if i + 1 == rank { 4 } else { 2 }, |i| if i + 2 == rank { -2 } else { -1 })
            }
            CartanType::D => {
                bad(4)?;
                let mut g = chain_gram(rank, |_| 2, |i| if i + 2 < rank { -1 } else { 0 });
                g[rank - 3][rank - 1] = -1;
                g[rank - 1][rank - 3] = -1;
                g
            }
            CartanType::E7 => {
                if rank != 7 {
                    return Err(Error::Unsupported(format!("type E{rank}")));
                }
                let mut g = vec![vec![0; 7]; 7];
                for i in 0..7 {
                    g[i][i] = 2;
                }
                for (a, b) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)] {
                    g[a - 1][b - 1] = -1;
                    g[b - 1][a - 1] = -1;
                }
                g
            }
        };
        let mut sys = Self { kind, rank, gram, positive: Vec::new(), lookup: BTreeMap::new() };
        sys.generate();
        Ok(sys)
    }

    /// Positive roots by root strings, sorted by height and then lexicographically.
    fn generate(&mut self) {
        let simple: Vec<Root> = (0..self.rank).map(|i| self.simple(i)).collect();
        let mut all: BTreeMap<Root, ()> = simple.iter().map(|r| (r.clone(), ())).collect();
        let mut layer = simple.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for alpha in &layer {
                for i in 0..self.rank {
                    if *alpha == simple[i] {
                        continue;
                    }
                    // α - p α_i is a root for p = 0..=p_max
                    let mut p = 0;
                    loop {
                        let mut down = alpha.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&c| c >= 0) && all.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - self.pairing(alpha, &simple[i]);
                    if q > 0 {
                        let mut up = alpha.clone();
                        up[i] += 1;
                        if all.insert(up.clone(), ()).is_none() {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut roots: Vec<Root> = all.into_keys().collect();
        roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
        self.lookup = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        self.positive = roots;
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind.name(), self.rank)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn simple(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    /// Positive roots in the fixed total order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("root systems are nonempty")
    }

    /// `(α, β)` in the integer normalization.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `⟨α, β^∨⟩ = 2(α, β)/(β, β)`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let num = 2 * self.inner(a, b);
        let den = self.inner(b, b);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// `A_ij = ⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.pairing(&self.simple(i), &self.simple(j))).collect())
            .collect()
    }

    /// Index of a positive root.
    pub fn positive_index(&self, r: &[i64]) -> Option<usize> {
        self.lookup.get(r).copied()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        if r.iter().all(|&c| c >= 0) {
            self.lookup.contains_key(r)
        } else if r.iter().all(|&c| c <= 0) {
            let neg: Root = r.iter().map(|c| -c).collect();
            self.lookup.contains_key(&neg)
        } else {
            false
        }
    }

    /// Largest `p` with `β - pα` a root.
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        loop {
            let r: Root = beta.iter().zip(alpha).map(|(b, a)| b - (p + 1) * a).collect();
            if self.is_root(&r) {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}
