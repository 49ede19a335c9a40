//! The four subcommands, as functions from inputs to output text.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use kkt_core::kkt::{build_kkt, jordan_from_grading};
use kkt_core::lie::LieAlgebra;
use kkt_core::orbits::{diagonalize, local_class, orbit_representative, Place};
use kkt_core::rootdata::{coordinatize, table_prediction, ChevalleyAlgebra};
use kkt_core::Rational;
use num_traits::{One, Zero};

use crate::descriptor::Target;
use crate::json::{rat, AlgebraJson, ClassifyJson, ElementJson, OrderedMap, StepJson, VerifyJson};
use crate::suites::{self, Context, Suite};

#[derive(Debug)]
pub enum CliError {
    /// Bad input or arguments; exit code 2.
    Usage(String),
    /// Unexpected failure (I/O); exit code 2.
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Reads `-` from stdin, inline JSON as is, and anything else as a file.
fn read_input(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))
    }
}

fn is_json_input(arg: &str) -> bool {
    arg == "-" || arg.trim_start().starts_with('{') || arg.ends_with(".json") || Path::new(arg).is_file()
}

/// The graded Lie algebra of a descriptor, with its Chevalley data for root targets.
pub fn build_target(target: &Target) -> Result<(LieAlgebra, Option<ChevalleyAlgebra>), CliError> {
    match target {
        Target::Jordan { algebra, .. } => Ok((build_kkt(algebra).map_err(usage)?, None)),
        Target::Root { kind, rank, node, .. } => {
            let ch = ChevalleyAlgebra::build(*kind, *rank, *node).map_err(usage)?;
            Ok((ch.algebra.clone(), Some(ch)))
        }
    }
}

pub fn cmd_build(descriptor: &str) -> Result<String, CliError> {
    let target = Target::parse(descriptor).map_err(usage)?;
    let (g, _) = build_target(&target)?;
    Ok(to_json(&AlgebraJson::from_algebra(&g, Some(target.descriptor()))))
}

pub struct VerifyArgs<'a> {
    pub target: &'a str,
    pub suites: &'a str,
    pub seed: u64,
    pub samples: usize,
}

/// Returns the report and whether every suite passed or was skipped.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let suites = Suite::parse_list(args.suites).map_err(usage)?;
    let (name, ctx) = if is_json_input(args.target) {
        let text = read_input(args.target)?;
        let parsed: AlgebraJson = serde_json::from_str(&text).map_err(|e| usage(format!("malformed algebra JSON: {e}")))?;
        let lie = parsed.to_algebra().map_err(usage)?;
        let name = parsed.algebra.clone().unwrap_or_else(|| args.target.to_string());
        (name, Context { lie, composition: None, chevalley: None })
    } else {
        let target = Target::parse(args.target).map_err(usage)?;
        let (lie, chevalley) = build_target(&target)?;
        let composition = match (&target, &chevalley) {
            (Target::Jordan { algebra, .. }, _) => algebra.composition().cloned(),
            (_, Some(ch)) if suites.contains(&Suite::CompositionLaw) => {
                coordinatize(ch).map_err(usage)?.composition
            }
            _ => None,
        };
        (target.descriptor().to_string(), Context { lie, composition, chevalley })
    };
    let opts = suites::Options { seed: args.seed, samples: args.samples };
    let results: Vec<_> = suites.iter().map(|&s| suites::run(s, &ctx, &opts)).collect();
    let passed = results.iter().all(|r| r.status != "fail");
    let report = VerifyJson {
        target: name,
        dim: ctx.lie.dim(),
        seed: args.seed,
        samples: args.samples,
        suites: results,
        passed,
    };
    Ok((to_json(&report), passed))
}

pub fn parse_places(s: &str) -> Result<Vec<Place>, CliError> {
    s.split(',').map(|p| Place::parse(p.trim()).map_err(usage)).collect()
}

pub fn cmd_classify(element: &str, places: &[Place]) -> Result<String, CliError> {
    let text = read_input(element)?;
    let parsed: ElementJson = serde_json::from_str(&text).map_err(|e| usage(format!("malformed element JSON: {e}")))?;
    let target = Target::parse(&parsed.algebra).map_err(usage)?;
    let Target::Jordan { algebra, composition, descriptor } = &target else {
        return Err(usage(format!("'{}' is not a Jordan algebra", parsed.algebra)));
    };
    let x = parsed.to_element(algebra).map_err(usage)?;
    let res = diagonalize(&x);
    let rep = orbit_representative(algebra, &res).map_err(usage)?;
    let product = res.diagonal.iter().filter(|c| !c.is_zero()).fold(Rational::one(), |acc, c| acc * c);
    let label = (res.rank > 0).then_some(product);
    // square classes are the orbit invariant only when D is the base field
    let over_field = algebra.composition().is_some_and(|d| d.dim() == 1);
    let active: Vec<Place> = if over_field {
        places.to_vec()
    } else {
        places.iter().copied().filter(|p| *p == Place::Infinity).collect()
    };
    let mut classes = OrderedMap::default();
    if let Some(a) = &label {
        for &p in &active {
            let class = local_class(a, p).map_err(usage)?;
            classes.0.push((p.to_string(), class.to_string()));
        }
    }
    let note = (!over_field && active.len() != places.len())
        .then(|| "finite-place classes are reported only for hermitian algebras over the base field".to_string());
    let out = ClassifyJson {
        algebra: descriptor.clone(),
        rank: res.rank,
        diagonal: res.diagonal.iter().map(rat).collect(),
        representative: ElementJson::from_element(&rep, descriptor, composition.as_deref()),
        label: label.as_ref().map(rat),
        local_classes: classes,
        log: res.log.iter().map(StepJson::from_step).collect(),
        note,
    };
    Ok(to_json(&out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    Text,
    Json,
}

pub fn cmd_export(descriptor: &str, format: ExportFormat) -> Result<String, CliError> {
    let target = Target::parse(descriptor).map_err(usage)?;
    let (g, ch) = build_target(&target)?;
    if format == ExportFormat::Json {
        return Ok(to_json(&AlgebraJson::from_algebra(&g, Some(target.descriptor()))));
    }
    let t = jordan_from_grading(&g).map_err(usage)?;
    let (nbar, m, n) = g.graded_dims();
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "algebra: {}", target.descriptor());
    let _ = writeln!(w, "dimension: {}", g.dim());
    let _ = writeln!(w, "grading: nbar {nbar}, m {m}, n {n}");
    let tr = g.triple();
    let _ = writeln!(w, "triple: e = {}", g.describe(&tr.e));
    let _ = writeln!(w, "        h = {}", g.describe(&tr.h));
    let _ = writeln!(w, "        f = {}", g.describe(&tr.f));
    let _ = writeln!(w, "frame: r = {}", g.frame().len());
    for (i, (e, f)) in g.frame().iter().enumerate() {
        let _ = writeln!(w, "  e_{} = {}; f_{} = {}", i + 1, g.describe(e), i + 1, g.describe(f));
    }
    if let Some(ch) = &ch {
        let roots = ch.system.positive_roots();
        let _ = writeln!(w, "parabolic node: {}", ch.parabolic.node);
        let s: Vec<String> = ch.parabolic.strongly_orthogonal.iter().map(|&k| format!("{:?}", roots[k])).collect();
        let _ = writeln!(w, "strongly orthogonal roots: {}", s.join(", "));
    }
    let p = t.pierce();
    let dims: Vec<String> = p.components.iter().map(|((i, j), b)| format!("J_{}{} {}", i + 1, j + 1, b.len())).collect();
    let _ = writeln!(w, "pierce dimensions: {}", dims.join(", "));
    let d = if t.degree() > 1 { p.dim(0, 1) } else { 0 };
    let _ = writeln!(w, "table row: dim n = {n}, r = {}, d = {d}", t.degree());
    if let Target::Root { kind, rank, .. } = &target {
        let node = ch.as_ref().map(|c| c.parabolic.node).unwrap_or_default();
        match table_prediction(*kind, *rank, node) {
            Some(row) => {
                let _ = writeln!(w, "table prediction: {row:?}, {}", if row == (n, t.degree(), d) { "match" } else { "MISMATCH" });
            }
            None => {
                let _ = writeln!(w, "table prediction: none for this node");
            }
        }
    }
    let _ = writeln!(w, "killing form normalized: {}", g.killing_normalized());
    Ok(out)
}
