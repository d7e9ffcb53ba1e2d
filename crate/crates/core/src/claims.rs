//! Claim manifests: TOML lists of computational claims about a presentation,
//! each checked by the checker registered for its `kind`.
//!
//! Every claim may set `field_extension = r` to work over `F_{p^r}` and
//! `mod_out = [...]` to divide out extra elements first.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graded::{hilbert_function, krull_dimension, projective_count, GradedError};
use crate::groebner::{GbError, GbOptions};
use crate::ideal::{IdealError, QuotientRing};
use crate::presentation::{Presentation, PresentationError};
use crate::regseq::{
    annihilators_disjoint, exhaustive_regular_scan, is_regular, search_regular_sequence, verify_sequence, witness_scan,
    RegSeqConfig, RegSeqError, SearchResult,
};
use crate::ring::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClaimError {
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("claim `{id}`: no checker for kind `{kind}`")]
    UnknownKind { id: String, kind: String },
    #[error("claim `{id}`: missing or malformed parameter `{key}`")]
    Param { id: String, key: String },
    #[error("claim `{id}`: cannot parse `{text}`: {message}")]
    Expression { id: String, text: String, message: String },
    #[error("claim `{id}`: {source}")]
    Presentation { id: String, source: PresentationError },
    #[error("claim `{id}`: {source}")]
    Compute { id: String, source: RegSeqError },
}

impl ClaimError {
    /// Whether the failure is a configured resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        match self {
            ClaimError::Compute { source, .. } => regseq_is_cap(source),
            _ => false,
        }
    }
}

pub fn regseq_is_cap(e: &RegSeqError) -> bool {
    matches!(
        e,
        RegSeqError::Level { .. }
            | RegSeqError::Graded(GradedError::EnumerationTooLarge { .. })
            | RegSeqError::Ideal(IdealError::Gb(GbError::DegreeCapExceeded { .. }))
    )
}

/// One entry of a manifest.
#[derive(Debug, Clone, Deserialize)]
pub struct Claim {
    pub id: String,
    pub kind: String,
    #[serde(default)]
    pub description: String,
    pub field_extension: Option<u32>,
    #[serde(default)]
    pub mod_out: Vec<String>,
    #[serde(flatten)]
    pub params: toml::Table,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    #[serde(rename = "claim", default)]
    pub claims: Vec<Claim>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ClaimError> {
        toml::from_str(text).map_err(|e| ClaimError::Manifest(e.to_string()))
    }
}

impl Claim {
    fn param_err(&self, key: &str) -> ClaimError {
        ClaimError::Param { id: self.id.clone(), key: key.into() }
    }

    pub fn str_param(&self, key: &str) -> Result<&str, ClaimError> {
        self.params.get(key).and_then(|v| v.as_str()).ok_or_else(|| self.param_err(key))
    }

    pub fn str_list(&self, key: &str) -> Result<Vec<&str>, ClaimError> {
        let arr = self.params.get(key).and_then(|v| v.as_array()).ok_or_else(|| self.param_err(key))?;
        arr.iter().map(|v| v.as_str().ok_or_else(|| self.param_err(key))).collect()
    }

    pub fn opt_str_list(&self, key: &str) -> Result<Vec<&str>, ClaimError> {
        if self.params.contains_key(key) {
            self.str_list(key)
        } else {
            Ok(vec![])
        }
    }

    pub fn u32_param(&self, key: &str) -> Result<u32, ClaimError> {
        self.params.get(key).and_then(|v| v.as_integer()).and_then(|n| u32::try_from(n).ok()).ok_or_else(|| self.param_err(key))
    }

    pub fn u32_list(&self, key: &str) -> Result<Vec<u32>, ClaimError> {
        let arr = self.params.get(key).and_then(|v| v.as_array()).ok_or_else(|| self.param_err(key))?;
        arr.iter().map(|v| v.as_integer().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| self.param_err(key))).collect()
    }

    pub fn bool_param(&self, key: &str, default: bool) -> Result<bool, ClaimError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| self.param_err(key)),
        }
    }
}

/// Shared state for checking the claims of one presentation.
pub struct ClaimContext<'a> {
    pub presentation: &'a Presentation,
    pub gb: GbOptions,
    pub regseq: RegSeqConfig,
}

impl ClaimContext<'_> {
    /// The quotient ring a claim refers to.
    pub fn quotient(&self, claim: &Claim) -> Result<QuotientRing, ClaimError> {
        let pres = match claim.field_extension {
            Some(r) if r > 1 => self
                .presentation
                .base_change(r, None)
                .map_err(|source| ClaimError::Presentation { id: claim.id.clone(), source })?,
            _ => self.presentation.clone(),
        };
        let q = QuotientRing::from_presentation(&pres, &self.gb).map_err(|e| compute(claim, e.into()))?;
        if claim.mod_out.is_empty() {
            return Ok(q);
        }
        let extra = parse_all(&q, claim, claim.mod_out.iter().map(String::as_str))?;
        q.mod_out(&extra).map_err(|e| compute(claim, e.into()))
    }
}

fn compute(claim: &Claim, source: RegSeqError) -> ClaimError {
    ClaimError::Compute { id: claim.id.clone(), source }
}

pub fn parse_one(q: &QuotientRing, claim: &Claim, text: &str) -> Result<Polynomial, ClaimError> {
    q.parse(text).map_err(|e| ClaimError::Expression { id: claim.id.clone(), text: text.into(), message: e.to_string() })
}

fn parse_all<'t>(
    q: &QuotientRing,
    claim: &Claim,
    texts: impl IntoIterator<Item = &'t str>,
) -> Result<Vec<Polynomial>, ClaimError> {
    texts.into_iter().map(|t| parse_one(q, claim, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub pass: bool,
    /// Human-readable summary of what was computed.
    pub detail: String,
}

impl ClaimOutcome {
    fn new(pass: bool, detail: impl Into<String>) -> ClaimOutcome {
        ClaimOutcome { pass, detail: detail.into() }
    }
}

pub trait ClaimChecker: Send + Sync {
    fn kind(&self) -> &'static str;

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError>;
}

/// `Ann(element)` equals the ideal generated by `expect_generators` modulo the relations.
struct AnnihilatorClaim;

impl ClaimChecker for AnnihilatorClaim {
    fn kind(&self) -> &'static str {
        "annihilator"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let f = parse_one(&q, claim, claim.str_param("element")?)?;
        let expected = parse_all(&q, claim, claim.str_list("expect_generators")?)?;
        let ann = q.annihilator(&f).map_err(|e| compute(claim, e.into()))?;
        let target = q.ideal().sum_with(&expected).map_err(|e| compute(claim, e.into()))?;
        let equal = ann.colon.equals(&target).map_err(|e| compute(claim, e.into()))?;
        let ring = q.ring();
        let gens: Vec<String> = ann.classes.iter().map(|c| ring.format(c)).collect();
        Ok(ClaimOutcome::new(
            equal,
            format!(
                "Ann({}) is generated by {} modulo the relations; {} the claimed ideal",
                ring.format(&f),
                gens.join(", "),
                if equal { "equal to" } else { "different from" }
            ),
        ))
    }
}

/// Each `[witness, target]` pair has a nonzero witness with `witness * target = 0`.
struct NonzeroAnnihilatesClaim;

impl ClaimChecker for NonzeroAnnihilatesClaim {
    fn kind(&self) -> &'static str {
        "nonzero_annihilates"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let ring = q.ring();
        let pairs = claim.params.get("pairs").and_then(|v| v.as_array()).ok_or_else(|| claim.param_err("pairs"))?;
        let mut pass = true;
        let mut parts = Vec::new();
        for pair in pairs {
            let pair = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| claim.param_err("pairs"))?;
            let w = parse_one(&q, claim, pair[0].as_str().ok_or_else(|| claim.param_err("pairs"))?)?;
            let t = parse_one(&q, claim, pair[1].as_str().ok_or_else(|| claim.param_err("pairs"))?)?;
            let nonzero = !q.is_zero(&w);
            let kills = q.is_zero(&ring.mul(&w, &t));
            pass &= nonzero && kills;
            parts.push(format!(
                "{} is {} and {} {}",
                ring.format(&w),
                if nonzero { "nonzero" } else { "ZERO" },
                if kills { "annihilates" } else { "does NOT annihilate" },
                ring.format(&t)
            ));
        }
        Ok(ClaimOutcome::new(pass, parts.join("; ")))
    }
}

/// Every class in the degree range is annihilated by one of the witnesses.
struct WitnessScanClaim;

impl ClaimChecker for WitnessScanClaim {
    fn kind(&self) -> &'static str {
        "witness_scan"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let ws = parse_all(&q, claim, claim.str_list("witnesses")?)?;
        let degrees = claim.u32_list("degrees")?;
        if degrees.len() != 2 {
            return Err(claim.param_err("degrees"));
        }
        let report = witness_scan(&q, &ws, (degrees[0], degrees[1]), &ctx.regseq).map_err(|e| compute(claim, e))?;
        let table = hilbert_function(&q, degrees[1]);
        let field_order = q.ring().field().order();
        let expected: u128 =
            (degrees[0]..=degrees[1]).map(|d| projective_count(field_order, table.counts[d as usize] as usize)).sum();
        let sizes: Vec<String> = report.components.iter().map(|c| c.classes.len().to_string()).collect();
        let count_ok = report.total_classes() as u128 == expected;
        Ok(ClaimOutcome::new(
            report.pass() && count_ok,
            format!(
                "{} classes in degrees {}..{} ({}), {} not annihilated",
                report.total_classes(),
                degrees[0],
                degrees[1],
                sizes.join(" + "),
                report.unannihilated()
            ),
        ))
    }
}

/// The sequence is regular with the expected degree sequence.
struct RegularSequenceClaim;

impl ClaimChecker for RegularSequenceClaim {
    fn kind(&self) -> &'static str {
        "regular_sequence"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let seq = parse_all(&q, claim, claim.str_list("sequence")?)?;
        let expect = claim.u32_list("expect_degrees")?;
        let report = verify_sequence(&q, &seq, &ctx.regseq).map_err(|e| compute(claim, e))?;
        let pass = report.overall && report.degree_sequence == expect;
        let verdict = if report.overall { "REGULAR" } else { "NOT REGULAR" };
        Ok(ClaimOutcome::new(pass, format!("{verdict} over {}, degree sequence {}", q.ring().field(), report.degree_text())))
    }
}

/// `(I : f) ∩ (I : g) ⊆ I` for `elements = [f, g]`.
struct DisjointClaim;

impl ClaimChecker for DisjointClaim {
    fn kind(&self) -> &'static str {
        "annihilators_disjoint"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let els = parse_all(&q, claim, claim.str_list("elements")?)?;
        if els.len() != 2 {
            return Err(claim.param_err("elements"));
        }
        let expect = claim.bool_param("expect", true)?;
        let report = annihilators_disjoint(&q, &els[0], &els[1]).map_err(|e| compute(claim, e))?;
        let ring = q.ring();
        let detail = match &report.common {
            None => format!("annihilators of {} and {} meet in zero", ring.format(&els[0]), ring.format(&els[1])),
            Some(c) => format!("{} annihilates both {} and {}", ring.format(c), ring.format(&els[0]), ring.format(&els[1])),
        };
        Ok(ClaimOutcome::new(report.disjoint == expect, detail))
    }
}

/// No class of the given degree is regular.
struct RegularScanEmptyClaim;

impl ClaimChecker for RegularScanEmptyClaim {
    fn kind(&self) -> &'static str {
        "regular_scan_empty"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let d = claim.u32_param("degree")?;
        let report = exhaustive_regular_scan(&q, d, &ctx.regseq).map_err(|e| compute(claim, e))?;
        let pass = report.regular.is_empty();
        let mut detail = format!(
            "{} candidates of degree {} tested over {}, {} regular",
            report.candidates,
            d,
            q.ring().field(),
            report.regular.len()
        );
        if let Some(f) = report.regular.first() {
            let _ = write!(detail, " (first: {})", q.ring().format(f));
        }
        Ok(ClaimOutcome::new(pass, detail))
    }
}

/// Bounded search outcome: `expect = "found"` or `"exhausted"`.
struct SearchClaim;

impl ClaimChecker for SearchClaim {
    fn kind(&self) -> &'static str {
        "search"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let degrees = claim.u32_list("degrees")?;
        let seeds = parse_all(&q, claim, claim.opt_str_list("seeds")?)?;
        let expect = claim.str_param("expect")?;
        let out = search_regular_sequence(&q, &degrees, &seeds, &ctx.regseq).map_err(|e| compute(claim, e))?;
        let ring = q.ring();
        let (kind, detail) = match &out.result {
            SearchResult::Found(r) => {
                let els: Vec<String> = r.elements.iter().map(|f| ring.format(f)).collect();
                ("found", format!("found {} with degree sequence {}", els.join("; "), r.degree_text()))
            }
            SearchResult::Exhausted => ("exhausted", "no sequence exists within the bounds".to_string()),
            SearchResult::BudgetExhausted => ("budget_exhausted", "candidate budget exhausted".to_string()),
        };
        let dims: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
        Ok(ClaimOutcome::new(
            kind == expect,
            format!(
                "search over {} for degrees {}: {detail} ({} candidates tested)",
                ring.field(),
                dims.join(","),
                out.candidates_tested
            ),
        ))
    }
}

struct IsRegularClaim;

impl ClaimChecker for IsRegularClaim {
    fn kind(&self) -> &'static str {
        "is_regular"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let f = parse_one(&q, claim, claim.str_param("element")?)?;
        let expect = claim.bool_param("expect", true)?;
        let verdict = is_regular(&q, &f, ctx.regseq.strategy.as_ref()).map_err(|e| compute(claim, e))?;
        Ok(ClaimOutcome::new(verdict.is_regular() == expect, format!("{}: {}", q.ring().format(&f), verdict.describe(q.ring()))))
    }
}

struct KrullDimensionClaim;

impl ClaimChecker for KrullDimensionClaim {
    fn kind(&self) -> &'static str {
        "krull_dimension_at_least"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let bound = claim.u32_param("value")? as usize;
        let dim = krull_dimension(&q).map_err(|e| compute(claim, e.into()))?;
        Ok(ClaimOutcome::new(dim >= bound, format!("Krull dimension {dim} (claimed at least {bound})")))
    }
}

/// Hilbert function values from degree 0.
struct HilbertFunctionClaim;

impl ClaimChecker for HilbertFunctionClaim {
    fn kind(&self) -> &'static str {
        "hilbert_function"
    }

    fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let q = ctx.quotient(claim)?;
        let expect: Vec<u64> = claim.u32_list("counts")?.into_iter().map(u64::from).collect();
        if expect.is_empty() {
            return Err(claim.param_err("counts"));
        }
        let table = hilbert_function(&q, expect.len() as u32 - 1);
        let got: Vec<String> = table.counts.iter().map(|c| c.to_string()).collect();
        Ok(ClaimOutcome::new(
            table.counts == expect,
            format!("dimensions in degrees 0..{}: {}", expect.len() - 1, got.join(", ")),
        ))
    }
}

/// Claim checkers available by kind.
#[derive(Clone)]
pub struct ClaimRegistry {
    entries: BTreeMap<&'static str, Arc<dyn ClaimChecker>>,
}

impl Default for ClaimRegistry {
    fn default() -> Self {
        let mut reg = ClaimRegistry { entries: BTreeMap::new() };
        let builtin: [Arc<dyn ClaimChecker>; 10] = [
            Arc::new(AnnihilatorClaim),
            Arc::new(NonzeroAnnihilatesClaim),
            Arc::new(WitnessScanClaim),
            Arc::new(RegularSequenceClaim),
            Arc::new(DisjointClaim),
            Arc::new(RegularScanEmptyClaim),
            Arc::new(SearchClaim),
            Arc::new(IsRegularClaim),
            Arc::new(KrullDimensionClaim),
            Arc::new(HilbertFunctionClaim),
        ];
        for c in builtin {
            reg.register(c);
        }
        reg
    }
}

impl ClaimRegistry {
    pub fn register(&mut self, checker: Arc<dyn ClaimChecker>) {
        self.entries.insert(checker.kind(), checker);
    }

    pub fn get(&self, kind: &str) -> Option<Arc<dyn ClaimChecker>> {
        self.entries.get(kind).cloned()
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn check(&self, ctx: &ClaimContext<'_>, claim: &Claim) -> Result<ClaimOutcome, ClaimError> {
        let checker =
            self.get(&claim.kind).ok_or_else(|| ClaimError::UnknownKind { id: claim.id.clone(), kind: claim.kind.clone() })?;
        checker.check(ctx, claim)
    }

    /// Checks every claim in order; errors are recorded per claim.
    pub fn run(&self, ctx: &ClaimContext<'_>, manifest: &Manifest) -> ClaimsReport {
        let results = manifest.claims.iter().map(|c| (c.clone(), self.check(ctx, c))).collect();
        ClaimsReport { results }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimsReport {
    pub results: Vec<(Claim, Result<ClaimOutcome, ClaimError>)>,
}

impl ClaimsReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|(_, r)| matches!(r, Ok(o) if o.pass)).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.results.len()
    }

    pub fn any_cap(&self) -> bool {
        self.results.iter().any(|(_, r)| matches!(r, Err(e) if e.is_cap()))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (claim, result) in &self.results {
            let (tag, detail) = match result {
                Ok(o) => (if o.pass { "PASS" } else { "FAIL" }, o.detail.clone()),
                Err(e) => ("ERROR", e.to_string()),
            };
            let _ = writeln!(out, "{tag} {}: {}", claim.id, detail);
            if !claim.description.is_empty() {
                let _ = writeln!(out, "     {}", claim.description);
            }
        }
        let _ = writeln!(out, "claims: {} passed, {} not passed", self.passed(), self.results.len() - self.passed());
        out
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .results
            .iter()
            .map(|(claim, result)| match result {
                Ok(o) => json!({"id": claim.id, "kind": claim.kind, "pass": o.pass, "detail": o.detail}),
                Err(e) => json!({"id": claim.id, "kind": claim.kind, "pass": false, "error": e.to_string()}),
            })
            .collect();
        json!({"claims": items, "passed": self.passed(), "total": self.results.len()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(pres: &Presentation) -> ClaimContext<'_> {
        ClaimContext { presentation: pres, gb: GbOptions::default(), regseq: RegSeqConfig { jobs: 1, ..RegSeqConfig::default() } }
    }

    const SMALL: &str = "field 2\ngen x 1\ngen y 1\nrel x*y\n";

    #[test]
    fn runs_a_small_manifest() {
        let pres = Presentation::parse(SMALL).unwrap();
        let manifest = Manifest::parse(
            r#"
[[claim]]
id = "a"
kind = "is_regular"
element = "x + y"

[[claim]]
id = "b"
kind = "annihilator"
element = "x"
expect_generators = ["y"]

[[claim]]
id = "c"
kind = "hilbert_function"
counts = [1, 2, 2, 2]

[[claim]]
id = "d"
kind = "regular_scan_empty"
mod_out = ["x + y"]
degree = 1
"#,
        )
        .unwrap();
        let report = ClaimRegistry::default().run(&ctx(&pres), &manifest);
        assert!(report.all_pass(), "{}", report.render());
    }

    #[test]
    fn reports_unknown_kinds_and_bad_params() {
        let pres = Presentation::parse(SMALL).unwrap();
        let manifest =
            Manifest::parse("[[claim]]\nid = \"a\"\nkind = \"nope\"\n\n[[claim]]\nid = \"b\"\nkind = \"is_regular\"\n").unwrap();
        let report = ClaimRegistry::default().run(&ctx(&pres), &manifest);
        assert!(matches!(report.results[0].1, Err(ClaimError::UnknownKind { .. })));
        assert!(matches!(report.results[1].1, Err(ClaimError::Param { .. })));
        assert!(!report.all_pass());
    }

    #[test]
    fn rejects_malformed_manifests() {
        assert!(Manifest::parse("[[claim]]\nkind = \"x\"\n").is_err());
    }
}
