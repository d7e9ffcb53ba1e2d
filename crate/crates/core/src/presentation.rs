//! Finitely presented graded algebras and the line-oriented `.gcr` format.
//!
//! ```text
//! field 2                     # or `field 2^2`, or `field 2^2 mod 1+@+@^2`
//! gen z 1
//! rel z*v + x*w
//! meta duflot_bound 1
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::field::{parse_at_poly, FieldError, FieldSpec};
use crate::ring::{GeneratorSet, ParseErrorKind, Polynomial, Ring, RingError, Term};

/// Typed metadata. Nothing in the engine reads these values; they are carried
/// into reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub group_name: Option<String>,
    pub group_order: Option<u64>,
    pub small_group_index: Option<u64>,
    pub hall_senior: Option<u64>,
    pub duflot_bound: Option<u32>,
    pub claimed_depth: Option<u32>,
    pub base_change: Option<String>,
    pub extra: BTreeMap<String, String>,
}

impl Metadata {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>, String> {
            value.parse::<T>().map(Some).map_err(|_| format!("meta `{key}` expects a natural number, got `{value}`"))
        }
        match key {
            "group_name" => self.group_name = Some(value.to_string()),
            "group_order" => self.group_order = num(key, value)?,
            "small_group_index" => self.small_group_index = num(key, value)?,
            "hall_senior" => self.hall_senior = num(key, value)?,
            "duflot_bound" => self.duflot_bound = num(key, value)?,
            "claimed_depth" => self.claimed_depth = num(key, value)?,
            "base_change" => self.base_change = Some(value.to_string()),
            _ => {
                if !crate::ring::is_valid_identifier(key) {
                    return Err(format!("invalid meta key `{key}`"));
                }
                self.extra.insert(key.to_string(), value.to_string());
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        push("group_name", self.group_name.clone());
        push("group_order", self.group_order.map(|v| v.to_string()));
        push("small_group_index", self.small_group_index.map(|v| v.to_string()));
        push("hall_senior", self.hall_senior.map(|v| v.to_string()));
        push("duflot_bound", self.duflot_bound.map(|v| v.to_string()));
        push("claimed_depth", self.claimed_depth.map(|v| v.to_string()));
        push("base_change", self.base_change.clone());
        out.extend(self.extra.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax(String),
    UnknownGenerator(String),
    BadCoefficient(String),
    DuplicateGenerator(String),
    InvalidGenerator(String),
    NonHomogeneousRelation { relation: String, first_degree: u32, other_degree: u32 },
    RelationDegreeTooLow { relation: String, degree: u32 },
    Field(FieldError),
    MissingField,
}

/// One problem at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            DiagnosticKind::Syntax(m) => write!(f, "syntax error: {m}"),
            DiagnosticKind::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            DiagnosticKind::BadCoefficient(m) => write!(f, "bad coefficient: {m}"),
            DiagnosticKind::DuplicateGenerator(n) => write!(f, "duplicate generator `{n}`"),
            DiagnosticKind::InvalidGenerator(m) => write!(f, "invalid generator: {m}"),
            DiagnosticKind::NonHomogeneousRelation { relation, first_degree, other_degree } => {
                write!(f, "relation `{relation}` is not homogeneous: terms of degree {first_degree} and {other_degree}")
            }
            DiagnosticKind::RelationDegreeTooLow { relation, degree } => {
                write!(f, "relation `{relation}` has degree {degree}, relations must have degree at least 2")
            }
            DiagnosticKind::Field(e) => write!(f, "{e}"),
            DiagnosticKind::MissingField => write!(f, "missing `field` line"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Diagnostic>),
    #[error("presentation is already over the extension field {0}")]
    AlreadyExtended(String),
    #[error("extension degree must be at least 2, got {0}")]
    InvalidExtensionDegree(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl PresentationError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            PresentationError::Invalid(d) => d,
            _ => &[],
        }
    }
}

/// Generators with degrees, homogeneous relations of degree at least 2, and metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: Ring,
    relations: Vec<Polynomial>,
    meta: Metadata,
}

impl Presentation {
    /// Validates and builds a presentation from already-parsed parts.
    pub fn new(ring: Ring, relations: Vec<Polynomial>, meta: Metadata) -> Result<Presentation, PresentationError> {
        let mut diags = Vec::new();
        for (i, rel) in relations.iter().enumerate() {
            if ring.check(rel).is_err() {
                diags.push(Diagnostic {
                    line: i + 1,
                    column: 1,
                    kind: DiagnosticKind::Syntax("relation does not belong to the ring".into()),
                });
            } else if let Some(kind) = relation_problem(&ring, rel) {
                diags.push(Diagnostic { line: i + 1, column: 1, kind });
            }
        }
        if diags.is_empty() {
            Ok(Presentation { ring, relations, meta })
        } else {
            Err(PresentationError::Invalid(diags))
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.ring.gens()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn meta(&self) -> &Metadata {
        &self.meta
    }

    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        parse_presentation(text)
    }

    /// Extends scalars to `F_{p^r}`, pushing each coefficient through the prime-field embedding.
    pub fn base_change(&self, r: u32, modulus: Option<&[u32]>) -> Result<Presentation, PresentationError> {
        let source = self.field();
        if !source.is_prime_field() {
            return Err(PresentationError::AlreadyExtended(source.to_string()));
        }
        if r < 2 {
            return Err(PresentationError::InvalidExtensionDegree(r));
        }
        let target = FieldSpec::new(source.characteristic(), r, modulus)?;
        let ring = self.ring.with_field(target.clone());
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut terms = Vec::with_capacity(rel.len());
            for t in rel.terms() {
                let lifted = source.embed(&source.from_coeff(t.coeff), &target)?;
                terms.push(Term { coeff: target.to_coeff(&lifted), mono: t.mono.clone() });
            }
            relations.push(ring.from_terms(terms));
        }
        let mut meta = self.meta.clone();
        meta.base_change = Some(format!("{} -> {}", source.describe(), target.describe()));
        Ok(Presentation { ring, relations, meta })
    }

    /// Same algebra with the generators listed in a different order.
    pub fn reorder(&self, names: &[&str]) -> Result<Presentation, RingError> {
        let perm: Vec<usize> = names
            .iter()
            .map(|n| self.gens().index_of(n).ok_or_else(|| RingError::UnknownGenerator(n.to_string())))
            .collect::<Result<_, _>>()?;
        let ring = self.ring.permuted(&perm)?;
        let relations = self.relations.iter().map(|r| ring.import(&self.ring, r)).collect::<Result<_, _>>()?;
        Ok(Presentation { ring, relations, meta: self.meta.clone() })
    }

    pub fn serialize(&self) -> String {
        serialize_presentation(self)
    }
}

fn relation_problem(ring: &Ring, rel: &Polynomial) -> Option<DiagnosticKind> {
    let text = ring.format(rel);
    let lead = rel.leading_monomial().map(|m| ring.weighted_degree(m).unwrap());
    let Some(first) = lead else {
        return Some(DiagnosticKind::RelationDegreeTooLow { relation: text, degree: 0 });
    };
    if let Some(t) = rel.terms().iter().find(|t| ring.weighted_degree(&t.mono).unwrap() != first) {
        let other = ring.weighted_degree(&t.mono).unwrap();
        return Some(DiagnosticKind::NonHomogeneousRelation { relation: text, first_degree: first, other_degree: other });
    }
    if first < 2 {
        return Some(DiagnosticKind::RelationDegreeTooLow { relation: text, degree: first });
    }
    None
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
    /// 0-based byte offset of `rest` within the raw line
    rest_col: usize,
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let trimmed_start = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = match body.find(char::is_whitespace) {
            Some(k) => (&body[..k], body[k..].trim_start()),
            None => (body, ""),
        };
        let rest_col = if rest.is_empty() {
            trimmed_start + body.len()
        } else {
            trimmed_start + (rest.as_ptr() as usize - body.as_ptr() as usize)
        };
        out.push(Line { number: i + 1, keyword, rest, rest_col });
    }
    out
}

fn parse_field(rest: &str) -> Result<FieldSpec, DiagnosticKind> {
    let syntax = |m: &str| DiagnosticKind::Syntax(m.to_string());
    let (size, modulus) = match rest.split_once(" mod ") {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (rest.trim(), None),
    };
    let (p, r) = match size.split_once('^') {
        Some((p, r)) => (p.trim(), r.trim()),
        None => (size, "1"),
    };
    let p: u32 = p.parse().map_err(|_| syntax("expected `field P`, `field P^R` or `field P^R mod POLY`"))?;
    let r: u32 = r.parse().map_err(|_| syntax("extension degree must be a natural number"))?;
    let modulus = match modulus {
        Some(text) => {
            if p < 2 {
                return Err(DiagnosticKind::Field(FieldError::NotPrime(p)));
            }
            Some(parse_at_poly(text, p).map_err(DiagnosticKind::Syntax)?)
        }
        None => None,
    };
    FieldSpec::new(p, r, modulus.as_deref()).map_err(DiagnosticKind::Field)
}

/// Parses `.gcr` text, reporting one diagnostic per malformed line.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let lines = split_lines(text);
    let mut diags: Vec<Diagnostic> = Vec::new();
    let mut field: Option<FieldSpec> = None;
    let mut gens = GeneratorSet::new();
    let mut meta = Metadata::default();
    let mut rel_lines: Vec<&Line<'_>> = Vec::new();
    let diag = |line: &Line<'_>, col: usize, kind: DiagnosticKind| Diagnostic { line: line.number, column: col + 1, kind };

    for line in &lines {
        match line.keyword {
            "field" => {
                if field.is_some() {
                    diags.push(diag(line, 0, DiagnosticKind::Syntax("duplicate `field` line".into())));
                    continue;
                }
                match parse_field(line.rest) {
                    Ok(f) => field = Some(f),
                    Err(kind) => diags.push(diag(line, line.rest_col, kind)),
                }
            }
            "gen" => {
                let parts: Vec<&str> = line.rest.split_whitespace().collect();
                if parts.len() != 2 {
                    diags.push(diag(line, line.rest_col, DiagnosticKind::Syntax("expected `gen NAME DEGREE`".into())));
                    continue;
                }
                let Ok(degree) = parts[1].parse::<u32>() else {
                    diags.push(diag(line, line.rest_col, DiagnosticKind::Syntax(format!("bad degree `{}`", parts[1]))));
                    continue;
                };
                match gens.push(parts[0], degree) {
                    Ok(()) => {}
                    Err(RingError::DuplicateGenerator(n)) => {
                        diags.push(diag(line, line.rest_col, DiagnosticKind::DuplicateGenerator(n)))
                    }
                    Err(e) => diags.push(diag(line, line.rest_col, DiagnosticKind::InvalidGenerator(e.to_string()))),
                }
            }
            "rel" => rel_lines.push(line),
            "meta" => {
                let (key, value) = match line.rest.split_once(char::is_whitespace) {
                    Some((k, v)) => (k, v.trim()),
                    None => (line.rest, ""),
                };
                if key.is_empty() || value.is_empty() {
                    diags.push(diag(line, line.rest_col, DiagnosticKind::Syntax("expected `meta KEY VALUE`".into())));
                } else if let Err(m) = meta.set(key, value) {
                    diags.push(diag(line, line.rest_col, DiagnosticKind::Syntax(m)));
                }
            }
            other => diags.push(diag(line, 0, DiagnosticKind::Syntax(format!("unknown keyword `{other}`")))),
        }
    }

    let Some(field) = field else {
        if !lines.iter().any(|l| l.keyword == "field") {
            diags.push(Diagnostic { line: 1, column: 1, kind: DiagnosticKind::MissingField });
        }
        diags.sort_by_key(|d| (d.line, d.column));
        return Err(PresentationError::Invalid(diags));
    };
    let ring = Ring::new(field, gens);
    let mut relations = Vec::with_capacity(rel_lines.len());
    for line in rel_lines {
        match ring.parse(line.rest) {
            Ok(rel) => match relation_problem(&ring, &rel) {
                None => relations.push(rel),
                Some(kind) => diags.push(diag(line, line.rest_col, kind)),
            },
            Err(e) => {
                let kind = match e.kind {
                    ParseErrorKind::Syntax(m) => DiagnosticKind::Syntax(m),
                    ParseErrorKind::UnknownGenerator(n) => DiagnosticKind::UnknownGenerator(n),
                    ParseErrorKind::BadCoefficient(m) => DiagnosticKind::BadCoefficient(m),
                };
                diags.push(diag(line, line.rest_col + e.offset, kind));
            }
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line, d.column));
        return Err(PresentationError::Invalid(diags));
    }
    Ok(Presentation { ring, relations, meta })
}

pub fn serialize_presentation(pres: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", pres.field().describe());
    for (name, deg) in pres.gens().names().iter().zip(pres.gens().degrees()) {
        let _ = writeln!(out, "gen {name} {deg}");
    }
    for rel in &pres.relations {
        let _ = writeln!(out, "rel {}", pres.ring.format(rel));
    }
    for (k, v) in pres.meta.entries() {
        let _ = writeln!(out, "meta {k} {v}");
    }
    out
}
