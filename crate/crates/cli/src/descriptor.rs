//! Algebra descriptor strings.
//!
//! ```text
//! composition: field | split-complex | complex[:g] | quaternion[:split|:g1,g2] | octonion[:split|:g1,g2,g3]
//! jordan:H<r>:<composition>
//! jordan:J2:dim=<n>[:gram=I|split|a,b,..|a,b;c,d]
//! root:<A|B|C|D|E7>:<rank>[:node=<j>]
//! ```

use std::sync::Arc;

use kkt_core::composition::CompositionAlgebra;
use kkt_core::jordan::JordanAlgebra;
use kkt_core::linalg::{self, Matrix};
use kkt_core::rational::{self, int};
use kkt_core::rootdata::CartanType;
use kkt_core::Rational;

#[derive(Clone, Debug)]
pub enum Target {
    Jordan {
        descriptor: String,
        /// Descriptor of `D` for hermitian algebras.
        composition: Option<String>,
        algebra: Arc<JordanAlgebra>,
    },
    Root {
        descriptor: String,
        kind: CartanType,
        rank: usize,
        node: Option<usize>,
    },
}

impl Target {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (family, rest) = s.split_once(':').ok_or_else(|| format!("malformed descriptor '{s}'"))?;
        match family {
            "jordan" => parse_jordan(s, rest),
            "root" => parse_root(s, rest),
            _ => Err(format!("unknown family '{family}' in '{s}' (expected jordan or root)")),
        }
    }

    pub fn descriptor(&self) -> &str {
        match self {
            Target::Jordan { descriptor, .. } | Target::Root { descriptor, .. } => descriptor,
        }
    }
}

fn parse_int(s: &str, what: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("{what} must be a positive integer, got '{s}'"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s.trim()).map_err(|e| format!("bad rational '{s}': {}", e.0))
}

fn parse_gammas(s: &str, count: usize) -> Result<Vec<Rational>, String> {
    let gammas = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if gammas.len() != count {
        return Err(format!("expected {count} doubling parameters, got '{s}'"));
    }
    if gammas.iter().any(num_traits::Zero::is_zero) {
        return Err(format!("doubling parameters must be nonzero, got '{s}'"));
    }
    Ok(gammas)
}

pub fn parse_composition(s: &str) -> Result<CompositionAlgebra, String> {
    let (name, params) = match s.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (s, None),
    };
    let (dim, default) = match name {
        "field" | "Q" if params.is_none() => return Ok(CompositionAlgebra::field()),
        "split-complex" if params.is_none() => return CompositionAlgebra::split(2).map_err(|e| e.to_string()),
        "complex" => (2, vec![int(-1)]),
        "quaternion" => (4, vec![int(-1); 2]),
        "octonion" => (8, vec![int(-1); 3]),
        _ => return Err(format!("unknown composition algebra '{s}'")),
    };
    let gammas = match params {
        None => default,
        Some("split") => vec![int(1); default.len()],
        Some(p) => parse_gammas(p, default.len())?,
    };
    CompositionAlgebra::build(dim, &gammas).map_err(|e| e.to_string())
}

fn parse_jordan(full: &str, rest: &str) -> Result<Target, String> {
    let (head, tail) = rest.split_once(':').unwrap_or((rest, ""));
    if let Some(r) = head.strip_prefix('H') {
        let r = parse_int(r, "degree")?;
        if tail.is_empty() {
            return Err(format!("'{full}' needs a composition algebra, e.g. jordan:H{r}:field"));
        }
        let d = parse_composition(tail)?;
        let algebra = JordanAlgebra::hermitian(r, Arc::new(d)).map_err(|e| e.to_string())?;
        return Ok(Target::Jordan {
            descriptor: full.to_string(),
            composition: Some(tail.to_string()),
            algebra: Arc::new(algebra),
        });
    }
    if head != "J2" {
        return Err(format!("unknown Jordan family '{head}' in '{full}' (expected H<r> or J2)"));
    }
    let mut dim = None;
    let mut gram = None;
    for part in tail.split(':').filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("dim", v)) => dim = Some(parse_int(v, "dim")?),
            Some(("gram", v)) => gram = Some(v.to_string()),
            _ => return Err(format!("unknown J2 parameter '{part}' in '{full}'")),
        }
    }
    let gram = parse_gram(gram.as_deref().unwrap_or("I"), dim)?;
    let algebra = JordanAlgebra::quadratic(gram).map_err(|e| e.to_string())?;
    Ok(Target::Jordan { descriptor: full.to_string(), composition: None, algebra: Arc::new(algebra) })
}

fn parse_gram(spec: &str, dim: Option<usize>) -> Result<Matrix, String> {
    let need_dim = || dim.ok_or_else(|| format!("gram={spec} needs dim=<n>"));
    let gram = match spec {
        "I" => linalg::identity(need_dim()?),
        // diag(1, -1, 1, ...) has maximal Witt index
        "split" => {
            let n = need_dim()?;
            (0..n)
                .map(|i| (0..n).map(|j| if i != j { int(0) } else if i % 2 == 0 { int(1) } else { int(-1) }).collect())
                .collect()
        }
        _ if spec.contains(';') => spec
            .split(';')
            .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?,
        _ => {
            let diag = spec.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            let n = diag.len();
            (0..n).map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { int(0) }).collect()).collect()
        }
    };
    if let Some(n) = dim {
        if gram.len() != n {
            return Err(format!("gram has size {} but dim={n}", gram.len()));
        }
    }
    Ok(gram)
}

fn parse_root(full: &str, rest: &str) -> Result<Target, String> {
    let mut parts = rest.split(':');
    let kind = CartanType::parse(parts.next().unwrap_or_default()).map_err(|e| e.to_string())?;
    let rank = match parts.next() {
        Some(r) => parse_int(r, "rank")?,
        None if kind == CartanType::E7 => 7,
        None => return Err(format!("'{full}' needs a rank, e.g. root:C:3")),
    };
    let mut node = None;
    for part in parts {
        match part.split_once('=') {
            Some(("node", v)) => node = Some(parse_int(v, "node")?),
            _ => return Err(format!("unknown root parameter '{part}' in '{full}'")),
        }
    }
    Ok(Target::Root { descriptor: full.to_string(), kind, rank, node })
}
