use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::lexer::Pos;
use super::parser::{parse_expr_at, ParseError, Scope};
use crate::jetspace::{LAGRANGIAN2_COORDS, LAGRANGIAN_PAIR_COORDS, ODE4_COORDS, PAIR_COORDS};
use crate::orthopath::{FinslerData, Signature};
use crate::symexpr::{Expr, FuncDecl};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Ode4,
    Ode3Pair,
    Lagrangian2,
    LagrangianPair,
    Monge,
    Orthopath,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Ode4 => "ode4",
            ProblemKind::Ode3Pair => "ode3pair",
            ProblemKind::Lagrangian2 => "lagrangian2",
            ProblemKind::LagrangianPair => "lagrangian_pair",
            ProblemKind::Monge => "monge",
            ProblemKind::Orthopath => "orthopath",
        }
    }

    fn from_name(s: &str) -> Option<ProblemKind> {
        Some(match s {
            "ode4" => ProblemKind::Ode4,
            "ode3pair" => ProblemKind::Ode3Pair,
            "lagrangian2" => ProblemKind::Lagrangian2,
            "lagrangian_pair" => ProblemKind::LagrangianPair,
            "monge" => ProblemKind::Monge,
            "orthopath" => ProblemKind::Orthopath,
            _ => return None,
        })
    }

    /// Coordinates usable in expressions and declarations.
    pub fn coords(self) -> &'static [&'static str] {
        match self {
            ProblemKind::Ode4 => &ODE4_COORDS,
            ProblemKind::Ode3Pair => &PAIR_COORDS,
            ProblemKind::Lagrangian2 | ProblemKind::Monge => &LAGRANGIAN2_COORDS,
            ProblemKind::LagrangianPair => &LAGRANGIAN_PAIR_COORDS,
            ProblemKind::Orthopath => &[],
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    Ode4 { f: Expr },
    Ode3Pair { f1: Expr, f2: Expr },
    Lagrangian2 { l: Expr },
    LagrangianPair { l1: Expr, l2: Expr, l0: Expr },
    Monge { f: Expr },
    Orthopath { signature: Signature, data: FinslerData },
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub declarations: Vec<Arc<FuncDecl>>,
    pub payload: Payload,
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self.payload {
            Payload::Ode4 { .. } => ProblemKind::Ode4,
            Payload::Ode3Pair { .. } => ProblemKind::Ode3Pair,
            Payload::Lagrangian2 { .. } => ProblemKind::Lagrangian2,
            Payload::LagrangianPair { .. } => ProblemKind::LagrangianPair,
            Payload::Monge { .. } => ProblemKind::Monge,
            Payload::Orthopath { .. } => ProblemKind::Orthopath,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("missing `kind = ...` line")]
    MissingKind,
    #[error("line {line}: unknown kind `{kind}`")]
    UnknownKind { line: usize, kind: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("line {line}: unknown key `{key}` for kind {kind}")]
    UnknownKey { line: usize, key: String, kind: ProblemKind },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: malformed line, expected `key = value` or `declare name(args)`")]
    Malformed { line: usize },
    #[error("line {line}: bad declaration: {reason}")]
    BadDeclaration { line: usize, reason: String },
    #[error("line {line}: bad signature, expected `(p,q)` with p + q >= 2")]
    BadSignature { line: usize },
    #[error("line {line}: index out of range in `{key}`")]
    IndexOutOfRange { line: usize, key: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("schema error: {0}")]
    Schema(#[from] SchemaError),
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_declaration(rest: &str, no: usize, kind: ProblemKind) -> Result<Arc<FuncDecl>, SchemaError> {
    let bad = |reason: &str| SchemaError::BadDeclaration { line: no, reason: reason.to_string() };
    let rest = rest.trim();
    let open = rest.find('(').ok_or_else(|| bad("expected `name(args)`"))?;
    let name = rest[..open].trim();
    let inner = rest[open + 1..].trim_end();
    let inner = inner.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
    if !is_ident(name) {
        return Err(bad("invalid function name"));
    }
    if kind.coords().contains(&name) {
        return Err(bad("function name clashes with a coordinate"));
    }
    let args: Vec<&str> = inner.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
    let mut seen = HashSet::new();
    for a in &args {
        if !kind.coords().contains(a) {
            return Err(bad(&format!("`{a}` is not a coordinate of kind {kind}")));
        }
        if !seen.insert(*a) {
            return Err(bad(&format!("argument `{a}` repeated")));
        }
    }
    Ok(FuncDecl::new(name, &args))
}

/// `I[1,2,2]` and friends: tensor name plus 1-based indices.
fn component_key(key: &str) -> Option<(&str, Vec<usize>)> {
    let open = key.find('[')?;
    let name = key[..open].trim();
    let inner = key[open + 1..].trim().strip_suffix(']')?;
    let idx: Option<Vec<usize>> = inner.split(',').map(|s| s.trim().parse().ok()).collect();
    Some((name, idx?))
}

fn parse_signature(v: &str, line: usize) -> Result<Signature, SchemaError> {
    let bad = SchemaError::BadSignature { line };
    let inner = v.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or(bad.clone())?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(bad);
    }
    let p: usize = parts[0].parse().map_err(|_| bad.clone())?;
    let q: usize = parts[1].parse().map_err(|_| bad.clone())?;
    Signature::new(p, q).map_err(|_| bad)
}

/// Parses the line-oriented problem format.
pub fn parse_problem(text: &str) -> Result<Problem, FrontendError> {
    let mut kind: Option<ProblemKind> = None;
    let mut decls: Vec<Arc<FuncDecl>> = Vec::new();
    let mut entries: Vec<Line<'_>> = Vec::new();
    let mut pending_decls: Vec<(usize, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("declare") {
            if rest.starts_with(char::is_whitespace) {
                pending_decls.push((no, rest));
                continue;
            }
        }
        let eq = content.find('=').ok_or(SchemaError::Malformed { line: no })?;
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        if key == "kind" {
            if kind.is_some() {
                return Err(SchemaError::DuplicateKey { line: no, key: "kind".into() }.into());
            }
            let k = value.trim();
            kind = Some(
                ProblemKind::from_name(k).ok_or_else(|| SchemaError::UnknownKind { line: no, kind: k.to_string() })?,
            );
            continue;
        }
        entries.push(Line { no, key, value, value_col: eq + 2 });
    }
    let kind = kind.ok_or(SchemaError::MissingKind)?;

    let mut scope = Scope::with_coords(kind.coords());
    for (no, rest) in pending_decls {
        let d = parse_declaration(rest, no, kind)?;
        if scope.function(d.name()).is_some() {
            return Err(SchemaError::BadDeclaration { line: no, reason: format!("`{}` declared twice", d.name()) }.into());
        }
        if kind == ProblemKind::Orthopath && !d.args().is_empty() {
            return Err(SchemaError::BadDeclaration {
                line: no,
                reason: "orthopath data only admits constant parameters `name()`".into(),
            }
            .into());
        }
        scope.declare(d.clone());
        decls.push(d);
    }

    let parse = |l: &Line<'_>| parse_expr_at(l.value, &scope, Pos { line: l.no, col: l.value_col });

    if kind == ProblemKind::Orthopath {
        return parse_orthopath(&entries, &parse).map(|payload| Problem { declarations: decls, payload });
    }

    let allowed: &[&str] = match kind {
        ProblemKind::Ode4 => &["f"],
        ProblemKind::Ode3Pair => &["f1", "f2"],
        ProblemKind::Lagrangian2 => &["L"],
        ProblemKind::LagrangianPair => &["L1", "L2", "L0"],
        ProblemKind::Monge => &["F"],
        ProblemKind::Orthopath => unreachable!(),
    };
    let mut values: BTreeMap<&str, Expr> = BTreeMap::new();
    for l in &entries {
        if !allowed.contains(&l.key) {
            return Err(SchemaError::UnknownKey { line: l.no, key: l.key.to_string(), kind }.into());
        }
        if values.contains_key(l.key) {
            return Err(SchemaError::DuplicateKey { line: l.no, key: l.key.to_string() }.into());
        }
        values.insert(l.key, parse(l)?);
    }
    let mut take = |k: &str| values.remove(k).ok_or_else(|| SchemaError::MissingKey(k.to_string()));
    let payload = match kind {
        ProblemKind::Ode4 => Payload::Ode4 { f: take("f")? },
        ProblemKind::Ode3Pair => Payload::Ode3Pair { f1: take("f1")?, f2: take("f2")? },
        ProblemKind::Lagrangian2 => Payload::Lagrangian2 { l: take("L")? },
        ProblemKind::LagrangianPair => Payload::LagrangianPair {
            l1: take("L1")?,
            l2: take("L2")?,
            l0: take("L0").unwrap_or_else(|_| Expr::zero()),
        },
        ProblemKind::Monge => Payload::Monge { f: take("F")? },
        ProblemKind::Orthopath => unreachable!(),
    };
    Ok(Problem { declarations: decls, payload })
}

fn parse_orthopath(
    entries: &[Line<'_>],
    parse: &dyn Fn(&Line<'_>) -> Result<Expr, ParseError>,
) -> Result<Payload, FrontendError> {
    let mut signature = None;
    for l in entries {
        if l.key == "signature" {
            if signature.is_some() {
                return Err(SchemaError::DuplicateKey { line: l.no, key: "signature".into() }.into());
            }
            signature = Some(parse_signature(l.value, l.no)?);
        }
    }
    let sig = signature.ok_or_else(|| SchemaError::MissingKey("signature".into()))?;
    let m = sig.dim();
    let mut given: BTreeMap<(String, Vec<usize>), Expr> = BTreeMap::new();
    for l in entries {
        if l.key == "signature" {
            continue;
        }
        let unknown = || SchemaError::UnknownKey { line: l.no, key: l.key.to_string(), kind: ProblemKind::Orthopath };
        let (name, idx) = component_key(l.key).ok_or_else(unknown)?;
        let arity = match name {
            "I" => 3,
            "Idot" | "Ibar" | "R" => 2,
            "J" => 1,
            _ => return Err(unknown().into()),
        };
        if idx.len() != arity || idx.iter().any(|&i| i == 0 || i > m) {
            return Err(SchemaError::IndexOutOfRange { line: l.no, key: l.key.to_string() }.into());
        }
        let idx: Vec<usize> = idx.into_iter().map(|i| i - 1).collect();
        let k = (name.to_string(), idx);
        if given.contains_key(&k) {
            return Err(SchemaError::DuplicateKey { line: l.no, key: l.key.to_string() }.into());
        }
        given.insert(k, parse(l)?);
    }
    let get = |name: &str, idx: &[usize]| given.get(&(name.to_string(), idx.to_vec())).cloned();
    let mut data = FinslerData::zeros(m);
    for a in 0..m {
        data.set_j(a, get("J", &[a]).unwrap_or_else(Expr::zero));
        for b in 0..m {
            data.set_idot(a, b, get("Idot", &[a, b]).unwrap_or_else(Expr::zero));
            data.set_ibar(a, b, get("Ibar", &[a, b]).unwrap_or_else(Expr::zero));
            // symmetric tensors: an omitted component takes the value of a given permutation
            let r = get("R", &[a, b]).or_else(|| get("R", &[b, a])).unwrap_or_else(Expr::zero);
            data.set_curvature(a, b, r);
            for c in 0..m {
                let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
                let v = perms.iter().find_map(|p| get("I", p)).unwrap_or_else(Expr::zero);
                data.set_torsion(a, b, c, v);
            }
        }
    }
    Ok(Payload::Orthopath { signature: sig, data })
}
