//! Verification suites behind `kkt verify`.

use std::sync::Arc;

use kkt_core::composition::CompositionAlgebra;
use kkt_core::jordan::JordanTable;
use kkt_core::kkt::jordan_from_grading;
use kkt_core::lie::{LieAlgebra, SuiteReport};
use kkt_core::linalg::{self, EchelonBasis, SparseVec};
use kkt_core::rational::int;
use kkt_core::rootdata::{coordinatize, cross_validate, ChevalleyAlgebra};
use kkt_core::sample;
use kkt_core::Rational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::json::SuiteJson;

/// Algebras up to this dimension get exhaustive triple checks.
pub const EXHAUSTIVE_DIM: usize = 36;
const MAX_POWER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Jacobi,
    Grading,
    Killing,
    JordanIdentity,
    CompositionLaw,
    QComposition,
    Pierce,
    CrossValidate,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Jacobi,
        Suite::Grading,
        Suite::Killing,
        Suite::JordanIdentity,
        Suite::CompositionLaw,
        Suite::QComposition,
        Suite::Pierce,
        Suite::CrossValidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Grading => "grading",
            Suite::Killing => "killing",
            Suite::JordanIdentity => "jordan-identity",
            Suite::CompositionLaw => "composition-law",
            Suite::QComposition => "q-composition",
            Suite::Pierce => "pierce",
            Suite::CrossValidate => "cross-validate",
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',')
            .map(|name| {
                Self::ALL
                    .into_iter()
                    .find(|suite| suite.name() == name.trim())
                    .ok_or_else(|| format!("unknown suite '{name}'"))
            })
            .collect()
    }
}

pub struct Options {
    pub seed: u64,
    pub samples: usize,
}

/// What a verification target provides.
pub struct Context {
    pub lie: LieAlgebra,
    pub composition: Option<Arc<CompositionAlgebra>>,
    pub chevalley: Option<ChevalleyAlgebra>,
}

enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

struct Outcome {
    status: Status,
    checked: u64,
}

impl From<SuiteReport> for Outcome {
    fn from(r: SuiteReport) -> Self {
        let status = if r.passed { Status::Pass } else { Status::Fail(r.witness.unwrap_or_default()) };
        Outcome { status, checked: r.checked }
    }
}

fn skipped(note: impl Into<String>) -> Outcome {
    Outcome { status: Status::Skipped(note.into()), checked: 0 }
}

/// Runs reports in order, stopping at the first failure.
fn chain<'a>(reports: impl IntoIterator<Item = Box<dyn FnOnce() -> Outcome + 'a>>) -> Outcome {
    let mut checked = 0;
    for run in reports {
        let o = run();
        checked += o.checked;
        if !matches!(o.status, Status::Pass) {
            return Outcome { status: o.status, checked };
        }
    }
    Outcome { status: Status::Pass, checked }
}

/// Splits `items` into contiguous chunks, checks them in parallel, and keeps
/// the failure from the earliest chunk so the report does not depend on
/// scheduling.
fn parallel_first_failure<T: Sync>(
    items: &[T],
    check: impl Fn(&[T]) -> SuiteReport + Sync,
) -> Outcome {
    let chunk = items.len().div_ceil(rayon::current_num_threads() * 8).max(1);
    let reports: Vec<SuiteReport> = items.par_chunks(chunk).map(&check).collect();
    let checked = items.len() as u64;
    match reports.into_iter().find(|r| !r.passed) {
        Some(r) => Outcome { status: Status::Fail(r.witness.unwrap_or_default()), checked },
        None => Outcome { status: Status::Pass, checked },
    }
}

fn triples(g: &LieAlgebra, opts: &Options, ordered: bool) -> Vec<(usize, usize, usize)> {
    if g.dim() <= EXHAUSTIVE_DIM {
        if ordered {
            g.all_ordered_triples()
        } else {
            g.all_triples()
        }
    } else {
        g.sampled_triples(opts.seed, opts.samples)
    }
}

fn jacobi(ctx: &Context, opts: &Options) -> Outcome {
    let g = &ctx.lie;
    let anti: Outcome = g.check_antisymmetry().into();
    if !matches!(anti.status, Status::Pass) {
        return anti;
    }
    parallel_first_failure(&triples(g, opts, false), |c| g.check_jacobi(c))
}

fn grading(ctx: &Context) -> Outcome {
    let g = &ctx.lie;
    chain([
        Box::new(|| g.check_grading().into()) as Box<dyn FnOnce() -> Outcome>,
        Box::new(|| g.check_abelian_radicals().into()),
    ])
}

fn killing(ctx: &Context, opts: &Options) -> Outcome {
    let g = &ctx.lie;
    let mut steps: Vec<Box<dyn FnOnce() -> Outcome>> = vec![
        Box::new(|| parallel_first_failure(&triples(g, opts, true), |c| g.check_killing_invariance(c))),
        Box::new(|| g.check_sl2().into()),
    ];
    if !g.frame().is_empty() {
        steps.push(Box::new(|| g.check_killing_pairing().into()));
    }
    chain(steps)
}

fn recovered(ctx: &Context) -> Result<JordanTable, Outcome> {
    jordan_from_grading(&ctx.lie).map_err(|e| Outcome { status: Status::Fail(format!("no Jordan algebra on n: {e}")), checked: 0 })
}

fn seeded_vectors(seed: u64, count: usize, dim: usize) -> Vec<Vec<Rational>> {
    let mut rng = sample::rng(seed);
    (0..count).map(|_| sample::vector(&mut rng, dim)).collect()
}

fn jordan_identity(ctx: &Context, opts: &Options) -> Outcome {
    let t = match recovered(ctx) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let xs = seeded_vectors(opts.seed, 2 * opts.samples, t.dim());
    let pairs: Vec<(usize, &[Rational], &[Rational])> =
        xs.chunks(2).enumerate().map(|(k, p)| (k, p[0].as_slice(), p[1].as_slice())).collect();
    parallel_first_failure(&pairs, |chunk| {
        for &(k, x, y) in chunk {
            let x2 = t.mul(x, x);
            if t.mul(&t.mul(x, y), &x2) != t.mul(x, &t.mul(y, &x2)) {
                return SuiteReport::fail("jordan-identity", 0, format!("Jordan identity fails on sample {k}"));
            }
            let pows = t.powers(x, MAX_POWER);
            for a in 1..MAX_POWER {
                for b in a..=MAX_POWER - a {
                    if t.mul(&pows[a], &pows[b]) != pows[a + b] {
                        return SuiteReport::fail("jordan-identity", 0, format!("x^{a} x^{b} != x^{} on sample {k}", a + b));
                    }
                }
            }
        }
        SuiteReport::pass("jordan-identity", chunk.len() as u64)
    })
}

fn composition_law(ctx: &Context, opts: &Options) -> Outcome {
    let Some(d) = &ctx.composition else {
        return skipped("no composition algebra attached to this target");
    };
    let n = d.dim();
    let xs = seeded_vectors(opts.seed, 2 * opts.samples, n);
    let pairs: Vec<(usize, &[Rational], &[Rational])> =
        xs.chunks(2).enumerate().map(|(k, p)| (k, p[0].as_slice(), p[1].as_slice())).collect();
    parallel_first_failure(&pairs, |chunk| {
        for &(k, x, y) in chunk {
            let xy = d.mul(x, y);
            if d.norm(&xy) != d.norm(x) * d.norm(y) {
                return SuiteReport::fail("composition-law", 0, format!("N(xy) != N(x)N(y) on sample {k}"));
            }
            if d.conj(&xy) != d.mul(&d.conj(y), &d.conj(x)) {
                return SuiteReport::fail("composition-law", 0, format!("conjugation is not an anti-automorphism on sample {k}"));
            }
        }
        SuiteReport::pass("composition-law", chunk.len() as u64)
    })
}

/// A Pierce component with its quadratic form and a solver for coordinates.
struct Component {
    basis: Vec<Vec<Rational>>,
    gram: linalg::Matrix,
    echelon: EchelonBasis,
}

impl Component {
    fn eval(&self, z: &[Rational]) -> Option<Rational> {
        let c = self.echelon.coords(&SparseVec::from_dense(z))?;
        let c = c.to_dense(self.basis.len());
        Some(linalg::bilinear(&self.gram, &c, &c))
    }

    fn combine(&self, c: &[Rational], dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (coef, b) in c.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += coef * v;
            }
        }
        out
    }
}

fn components(t: &JordanTable) -> Result<Vec<((usize, usize), Component)>, String> {
    let p = t.pierce();
    let mut out = Vec::new();
    for (&(i, j), basis) in &p.components {
        if i == j {
            continue;
        }
        let gram = t.pierce_form(i, j, basis).map_err(|e| e.to_string())?;
        let mut echelon = EchelonBasis::new();
        for b in basis {
            echelon.insert(&SparseVec::from_dense(b));
        }
        out.push(((i, j), Component { basis: basis.clone(), gram, echelon }));
    }
    Ok(out)
}

fn pierce(ctx: &Context) -> Outcome {
    let t = match recovered(ctx) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let p = t.pierce();
    let fail = |msg: String, checked| Outcome { status: Status::Fail(msg), checked };
    if p.total_dim() != t.dim() {
        return fail(format!("Pierce components span {} of {} dimensions", p.total_dim(), t.dim()), 0);
    }
    for i in 0..t.degree() {
        if p.dim(i, i) != 1 {
            return fail(format!("J_{0}{0} has dimension {1}, expected 1", i + 1, p.dim(i, i)), 0);
        }
    }
    if t.degree() > 1 && p.off_diagonal_dim().is_none() {
        return fail("off-diagonal Pierce components have different dimensions".into(), 0);
    }
    let comps = match components(&t) {
        Ok(c) => c,
        Err(e) => return fail(e, 0),
    };
    let mut checked = 0;
    for ((i, j), c) in &comps {
        let unit: Vec<Rational> = t.idempotent(*i).iter().zip(t.idempotent(*j)).map(|(a, b)| a + b).collect();
        for (a, x) in c.basis.iter().enumerate() {
            for (b, y) in c.basis.iter().enumerate() {
                checked += 1;
                let expected: Vec<Rational> = unit.iter().map(|u| u * &c.gram[a][b]).collect();
                if t.mul(x, y) != expected {
                    return fail(format!("x∘y != Q(x, y)(e_{} + e_{}) on basis pair ({a}, {b}) of J_{}{}", i + 1, j + 1, i + 1, j + 1), checked);
                }
            }
        }
        if linalg::determinant(&c.gram).is_zero() {
            return fail(format!("Q_{}{} is degenerate", i + 1, j + 1), checked);
        }
    }
    Outcome { status: Status::Pass, checked }
}

/// `Q_jl({x, y}) = Q_il(x) Q_ij(y)` with `{x, y} = 2 x∘y`, `x ∈ J_il`, `y ∈ J_ij`.
fn q_composition(ctx: &Context, opts: &Options) -> Outcome {
    let t = match recovered(ctx) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let r = t.degree();
    if r < 3 {
        return skipped(format!("vacuous for degree {r}"));
    }
    let comps = match components(&t) {
        Ok(c) => c,
        Err(e) => return Outcome { status: Status::Fail(e), checked: 0 },
    };
    let get = |i: usize, j: usize| &comps.iter().find(|(k, _)| *k == (i.min(j), i.max(j))).expect("component").1;
    let mut rng = sample::rng(opts.seed);
    let cases: Vec<(usize, usize, usize, Vec<Rational>, Vec<Rational>)> = (0..opts.samples)
        .map(|_| {
            let i = rng.gen_range(0..r);
            let j = (i + 1 + rng.gen_range(0..r - 1)) % r;
            let l = (0..r).filter(|&l| l != i && l != j).nth(rng.gen_range(0..r - 2)).expect("third index");
            let x = sample::vector(&mut rng, get(i, l).basis.len());
            let y = sample::vector(&mut rng, get(i, j).basis.len());
            (i, j, l, x, y)
        })
        .collect();
    let dim = t.dim();
    parallel_first_failure(&cases, |chunk| {
        for (i, j, l, xc, yc) in chunk {
            let (qil, qij, qjl) = (get(*i, *l), get(*i, *j), get(*j, *l));
            let x = qil.combine(xc, dim);
            let y = qij.combine(yc, dim);
            let xy: Vec<Rational> = t.mul(&x, &y).into_iter().map(|c| c * int(2)).collect();
            let lhs = qjl.eval(&xy);
            let rhs = linalg::bilinear(&qil.gram, xc, xc) * linalg::bilinear(&qij.gram, yc, yc);
            if lhs.as_ref() != Some(&rhs) {
                return SuiteReport::fail(
                    "q-composition",
                    0,
                    format!("Q_{}{}(2x∘y) != Q_{}{}(x) Q_{}{}(y)", j + 1, l + 1, i + 1, l + 1, i + 1, j + 1),
                );
            }
        }
        SuiteReport::pass("q-composition", chunk.len() as u64)
    })
}

fn cross(ctx: &Context) -> Outcome {
    let Some(ch) = &ctx.chevalley else {
        return skipped("cross-validation needs a root-data target");
    };
    let result = coordinatize(ch).and_then(|c| cross_validate(ch, &c));
    match result {
        Ok(x) => x.report.into(),
        Err(e) => Outcome { status: Status::Fail(format!("coordinatization failed: {e}")), checked: 0 },
    }
}

pub fn run(suite: Suite, ctx: &Context, opts: &Options) -> SuiteJson {
    let outcome = match suite {
        Suite::Jacobi => jacobi(ctx, opts),
        Suite::Grading => grading(ctx),
        Suite::Killing => killing(ctx, opts),
        Suite::JordanIdentity => jordan_identity(ctx, opts),
        Suite::CompositionLaw => composition_law(ctx, opts),
        Suite::QComposition => q_composition(ctx, opts),
        Suite::Pierce => pierce(ctx),
        Suite::CrossValidate => cross(ctx),
    };
    let (status, witness, note) = match outcome.status {
        Status::Pass => ("pass", None, None),
        Status::Fail(w) => ("fail", Some(w), None),
        Status::Skipped(n) => ("skipped", None, Some(n)),
    };
    SuiteJson { name: suite.name().to_string(), status: status.to_string(), checked: outcome.checked, witness, note }
}
