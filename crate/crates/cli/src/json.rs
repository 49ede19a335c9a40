//! JSON formats. Rationals are always strings: `"p/q"` on output, `"p/q"` or
//! `"p"` on input.

use std::collections::BTreeMap;
use std::sync::Arc;

use kkt_core::jordan::{JordanAlgebra, JordanElement, JordanKind};
use kkt_core::lie::{LieAlgebra, Triple};
use kkt_core::linalg::SparseVec;
use kkt_core::orbits::Step;
use kkt_core::rational;
use kkt_core::Rational;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

pub fn rat(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat).collect()
}

pub fn parse_rat(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

pub fn parse_rats(v: &[String]) -> Result<Vec<Rational>, String> {
    v.iter().map(|s| parse_rat(s)).collect()
}

/// `[[k, "p/q"], ...]`
pub type SparseJson = Vec<(usize, String)>;

fn sparse_to_json(v: &SparseVec) -> SparseJson {
    v.iter().map(|(k, c)| (k, rat(c))).collect()
}

fn sparse_from_json(v: &SparseJson, dim: usize) -> Result<SparseVec, String> {
    let mut out = SparseVec::zero();
    for (k, c) in v {
        if *k >= dim {
            return Err(format!("basis index {k} out of range (dimension {dim})"));
        }
        out.set(*k, parse_rat(c)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisJson {
    pub label: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TripleJson {
    pub e: SparseJson,
    pub f: SparseJson,
    pub h: SparseJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FrameJson {
    pub e: SparseJson,
    pub f: SparseJson,
}

/// Structure constants; only brackets `[b_i, b_j]` with `i < j` are stored.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub basis: Vec<BasisJson>,
    pub brackets: Vec<(usize, usize, SparseJson)>,
    pub triple: TripleJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frame: Vec<FrameJson>,
}

impl AlgebraJson {
    pub fn from_algebra(g: &LieAlgebra, descriptor: Option<&str>) -> Self {
        let basis = g
            .labels()
            .iter()
            .zip(g.degrees())
            .map(|(label, &degree)| BasisJson { label: label.clone(), degree })
            .collect();
        let brackets = g.upper_brackets().map(|(i, j, v)| (i, j, sparse_to_json(v))).collect();
        let t = g.triple();
        AlgebraJson {
            algebra: descriptor.map(str::to_string),
            basis,
            brackets,
            triple: TripleJson { e: sparse_to_json(&t.e), f: sparse_to_json(&t.f), h: sparse_to_json(&t.h) },
            frame: g.frame().iter().map(|(e, f)| FrameJson { e: sparse_to_json(e), f: sparse_to_json(f) }).collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, String> {
        let n = self.basis.len();
        let labels = self.basis.iter().map(|b| b.label.clone()).collect();
        let degrees = self.basis.iter().map(|b| b.degree).collect();
        let mut upper = BTreeMap::new();
        for (i, j, v) in &self.brackets {
            if i >= j || *j >= n {
                return Err(format!("bracket entry ({i}, {j}) must satisfy i < j < {n}"));
            }
            if upper.insert((*i, *j), sparse_from_json(v, n)?).is_some() {
                return Err(format!("bracket entry ({i}, {j}) appears twice"));
            }
        }
        let triple = Triple {
            e: sparse_from_json(&self.triple.e, n)?,
            h: sparse_from_json(&self.triple.h, n)?,
            f: sparse_from_json(&self.triple.f, n)?,
        };
        let frame = self
            .frame
            .iter()
            .map(|p| Ok((sparse_from_json(&p.e, n)?, sparse_from_json(&p.f, n)?)))
            .collect::<Result<Vec<_>, String>>()?;
        LieAlgebra::from_upper(labels, degrees, &upper, triple, frame).map_err(|e| e.to_string())
    }
}

/// An off-diagonal entry: bare coefficients or `{"algebra": ..., "coeffs": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EntryJson {
    Coeffs(Vec<String>),
    Element { algebra: String, coeffs: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElementBody {
    Hermitian {
        diag: Vec<String>,
        #[serde(default)]
        upper: BTreeMap<String, EntryJson>,
    },
    Quadratic {
        a: String,
        b: String,
        v: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub algebra: String,
    #[serde(flatten)]
    pub body: ElementBody,
}

impl ElementJson {
    pub fn from_element(x: &JordanElement, descriptor: &str, composition: Option<&str>) -> Self {
        let j = x.algebra();
        let body = match j.kind() {
            JordanKind::Hermitian { r, d } => {
                let diag = (0..*r).map(|i| rat(&x.diag(i))).collect();
                let mut upper = BTreeMap::new();
                for a in 0..*r {
                    for b in a + 1..*r {
                        let u = x.entry(a, b);
                        if !d.is_zero(&u) {
                            let coeffs = rats(&u);
                            let entry = match composition {
                                Some(c) => EntryJson::Element { algebra: c.to_string(), coeffs },
                                None => EntryJson::Coeffs(coeffs),
                            };
                            upper.insert(format!("{},{}", a + 1, b + 1), entry);
                        }
                    }
                }
                ElementBody::Hermitian { diag, upper }
            }
            JordanKind::Quadratic { .. } => {
                ElementBody::Quadratic { a: rat(&x.diag(0)), b: rat(&x.diag(1)), v: rats(x.vector_part()) }
            }
        };
        ElementJson { algebra: descriptor.to_string(), body }
    }

    pub fn to_element(&self, j: &Arc<JordanAlgebra>) -> Result<JordanElement, String> {
        match (&self.body, j.kind()) {
            (ElementBody::Hermitian { diag, upper }, JordanKind::Hermitian { r, d }) => {
                let diag = parse_rats(diag)?;
                if diag.len() != *r {
                    return Err(format!("expected {r} diagonal entries, got {}", diag.len()));
                }
                let mut entries = BTreeMap::new();
                for (key, entry) in upper {
                    let (a, b) = key
                        .split_once(',')
                        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                        .ok_or_else(|| format!("upper key '{key}' must be 'i,j'"))?;
                    if a == 0 || a >= b || b > *r {
                        return Err(format!("upper key '{key}' must satisfy 1 <= i < j <= {r}"));
                    }
                    let coeffs = match entry {
                        EntryJson::Coeffs(c) | EntryJson::Element { coeffs: c, .. } => parse_rats(c)?,
                    };
                    if coeffs.len() != d.dim() {
                        return Err(format!("entry {key} has {} coefficients, expected {}", coeffs.len(), d.dim()));
                    }
                    entries.insert((a - 1, b - 1), coeffs);
                }
                JordanElement::hermitian(j, &diag, &entries).map_err(|e| e.to_string())
            }
            (ElementBody::Quadratic { a, b, v }, JordanKind::Quadratic { .. }) => {
                JordanElement::quadratic(j, parse_rat(a)?, parse_rat(b)?, &parse_rats(v)?).map_err(|e| e.to_string())
            }
            _ => Err(format!("element shape does not match algebra '{}'", self.algebra)),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum StepJson {
    Transvection { i: usize, j: usize, u: Vec<String> },
    Swap { i: usize, j: usize },
}

impl StepJson {
    /// Frame indices are one-based in JSON.
    pub fn from_step(s: &Step) -> Self {
        match s {
            Step::Transvection(t) => StepJson::Transvection { i: t.i + 1, j: t.j + 1, u: rats(&t.u) },
            Step::Swap(p, q) => StepJson::Swap { i: p + 1, j: q + 1 },
        }
    }
}

/// A string map that keeps insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrderedMap(pub Vec<(String, String)>);

impl Serialize for OrderedMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ClassifyJson {
    pub algebra: String,
    pub rank: usize,
    pub diagonal: Vec<String>,
    pub representative: ElementJson,
    /// Product of the nonzero diagonal entries; `a` of the representative at full rank.
    pub label: Option<String>,
    pub local_classes: OrderedMap,
    pub log: Vec<StepJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteJson {
    pub name: String,
    pub status: String,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyJson {
    pub target: String,
    pub dim: usize,
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteJson>,
    pub passed: bool,
}
