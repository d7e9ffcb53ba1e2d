//! Regular elements and sequences in graded quotient rings: single-element
//! tests, sequence verification, witness scans over graded components,
//! exhaustive scans for regular classes, and bounded sequence search.
//!
//! Candidate tests within one enumeration level may run on a worker pool;
//! results are always consumed in canonical candidate order, so reports do
//! not depend on the number of workers.

pub mod strategy;

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graded::{component_enumerate, projective_count, GradedError, DEFAULT_ENUMERATION_CAP};
use crate::groebner::GbStats;
use crate::ideal::{IdealError, QuotientRing};
use crate::ring::{Polynomial, Ring};

pub use strategy::{ColonTest, HilbertSeriesTest, RegularityTest, StrategyRegistry, DEFAULT_STRATEGY};

/// Candidates tested per parallel batch.
const BATCH: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegSeqError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("level {level}: {source}")]
    Level { level: usize, source: GradedError },
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("`{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("`{0}` has degree 0; sequence elements must have positive degree")]
    PositiveDegreeRequired(String),
    #[error("element is zero in the quotient ring")]
    ZeroElement,
    #[error("witness {index} (`{text}`) is zero in the quotient ring")]
    ZeroWitness { index: usize, text: String },
    #[error("strategy `{strategy}` returned an invalid witness `{witness}`")]
    UnsoundWitness { strategy: String, witness: String },
    #[error("degree bounds must be nonempty")]
    EmptyDegreeBounds,
    #[error("seed element {index} has degree {found}, expected {expected}")]
    SeedDegreeMismatch { index: usize, expected: u32, found: u32 },
    #[error("{seeds} seed elements given for {levels} levels")]
    TooManySeeds { seeds: usize, levels: usize },
    #[error("degree range {lo}..{hi} is empty")]
    EmptyRange { lo: u32, hi: u32 },
    #[error("could not start worker pool: {0}")]
    Workers(String),
}

#[derive(Clone, Debug)]
pub struct RegSeqConfig {
    pub strategy: Arc<dyn RegularityTest>,
    pub enumeration_cap: u64,
    /// Worker threads; 0 uses one per core, 1 runs sequentially.
    pub jobs: usize,
    /// Maximum number of candidates a search may test.
    pub candidate_budget: Option<u64>,
}

impl Default for RegSeqConfig {
    fn default() -> Self {
        RegSeqConfig {
            strategy: Arc::new(HilbertSeriesTest),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            jobs: 0,
            candidate_budget: None,
        }
    }
}

struct Workers {
    pool: Option<rayon::ThreadPool>,
}

impl Workers {
    fn new(jobs: usize) -> Result<Workers, RegSeqError> {
        if jobs == 1 {
            return Ok(Workers { pool: None });
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| RegSeqError::Workers(e.to_string()))?;
        Ok(Workers { pool: Some(pool) })
    }

    /// Order-preserving map.
    fn map<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        match &self.pool {
            Some(pool) if items.len() > 1 => pool.install(|| items.par_iter().map(&f).collect()),
            _ => items.iter().map(f).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    /// `witness` is nonzero in the quotient and annihilates the element.
    ZeroDivisor {
        witness: Polynomial,
    },
    ZeroInQuotient,
}

impl Verdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, Verdict::Regular)
    }

    pub fn witness(&self) -> Option<&Polynomial> {
        match self {
            Verdict::ZeroDivisor { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn describe(&self, ring: &Ring) -> String {
        match self {
            Verdict::Regular => "regular".into(),
            Verdict::ZeroDivisor { witness } => format!("zero divisor, witness {}", ring.format(witness)),
            Verdict::ZeroInQuotient => "zero in the quotient".into(),
        }
    }

    fn to_json(&self, ring: &Ring) -> Value {
        match self {
            Verdict::Regular => json!({"kind": "regular"}),
            Verdict::ZeroDivisor { witness } => json!({"kind": "zero_divisor", "witness": ring.format(witness)}),
            Verdict::ZeroInQuotient => json!({"kind": "zero_in_quotient"}),
        }
    }
}

/// Regularity of `f` in `q` without a witness; zero classes are not regular.
pub fn decide_regular(q: &QuotientRing, f: &Polynomial, strategy: &dyn RegularityTest) -> Result<bool, RegSeqError> {
    let nf = q.normal_form(f);
    if nf.is_zero() {
        return Ok(false);
    }
    let degree = positive_degree(q.ring(), &nf)?;
    Ok(strategy.decide(q, &nf, degree)?)
}

/// Weighted degree of a homogeneous element of positive degree.
pub fn positive_degree(ring: &Ring, f: &Polynomial) -> Result<u32, RegSeqError> {
    ring.check(f).map_err(IdealError::from)?;
    if f.is_zero() {
        return Err(RegSeqError::ZeroElement);
    }
    match ring.homogeneous_degree(f) {
        None => Err(RegSeqError::NonHomogeneous(ring.format(f))),
        Some(0) => Err(RegSeqError::PositiveDegreeRequired(ring.format(f))),
        Some(d) => Ok(d),
    }
}

/// Regularity of `f` in `q`. Witnesses are re-checked by normal forms.
pub fn is_regular(q: &QuotientRing, f: &Polynomial, strategy: &dyn RegularityTest) -> Result<Verdict, RegSeqError> {
    let ring = q.ring();
    if !f.is_zero() {
        positive_degree(ring, f)?;
    } else {
        ring.check(f).map_err(IdealError::from)?;
    }
    let nf = q.normal_form(f);
    if nf.is_zero() {
        return Ok(Verdict::ZeroInQuotient);
    }
    let degree = ring.homogeneous_degree(&nf).expect("normal form of a homogeneous element");
    let verdict = strategy.test(q, &nf, degree)?;
    if let Verdict::ZeroDivisor { witness } = &verdict {
        if q.is_zero(witness) || !q.is_zero(&ring.mul(witness, f)) {
            return Err(RegSeqError::UnsoundWitness { strategy: strategy.name().into(), witness: ring.format(witness) });
        }
    }
    Ok(verdict)
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub element: Polynomial,
    pub degree: u32,
    pub verdict: Verdict,
    /// Size and statistics of the basis of the quotient the element was tested in.
    pub basis_size: usize,
    pub gb_stats: GbStats,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct RegularSequenceReport {
    pub elements: Vec<Polynomial>,
    pub degree_sequence: Vec<u32>,
    /// One entry per tested element; testing stops at the first failure.
    pub stages: Vec<StageReport>,
    pub overall: bool,
}

impl RegularSequenceReport {
    pub fn degree_text(&self) -> String {
        self.degree_sequence.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn render(&self, ring: &Ring, timings: bool) -> String {
        let mut out = String::new();
        for (i, s) in self.stages.iter().enumerate() {
            let _ = write!(
                out,
                "element {}: {} (degree {}): {} [basis {} elements]",
                i + 1,
                ring.format(&s.element),
                s.degree,
                s.verdict.describe(ring),
                s.basis_size
            );
            if timings {
                let _ = write!(out, " {:.3}s", s.elapsed.as_secs_f64());
            }
            out.push('\n');
        }
        if self.overall {
            let _ = writeln!(out, "REGULAR, degree sequence {}", self.degree_text());
        } else {
            let at = self.stages.len();
            let _ = writeln!(out, "NOT REGULAR at element {at}, degree sequence {}", self.degree_text());
        }
        out
    }

    pub fn to_json(&self, ring: &Ring, timings: bool) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| {
                let mut v = json!({
                    "element": ring.format(&s.element),
                    "degree": s.degree,
                    "verdict": s.verdict.to_json(ring),
                    "basis_size": s.basis_size,
                    "gb_stats": s.gb_stats,
                });
                if timings {
                    v["seconds"] = json!(s.elapsed.as_secs_f64());
                }
                v
            })
            .collect();
        json!({
            "elements": self.elements.iter().map(|f| ring.format(f)).collect::<Vec<_>>(),
            "degree_sequence": self.degree_sequence,
            "stages": stages,
            "overall": self.overall,
        })
    }
}

/// Tests each `fs[i]` against `I + <fs[0], ..., fs[i-1]>`, stopping at the first failure.
pub fn verify_sequence(q: &QuotientRing, fs: &[Polynomial], cfg: &RegSeqConfig) -> Result<RegularSequenceReport, RegSeqError> {
    let ring = q.ring();
    let degree_sequence = fs.iter().map(|f| positive_degree(ring, f)).collect::<Result<Vec<_>, _>>()?;
    let mut stages = Vec::new();
    let mut overall = true;
    let mut current: Option<QuotientRing> = None;
    for (f, &degree) in fs.iter().zip(&degree_sequence) {
        let here = current.as_ref().unwrap_or(q);
        let start = Instant::now();
        let verdict = is_regular(here, f, cfg.strategy.as_ref())?;
        let ok = verdict.is_regular();
        stages.push(StageReport {
            element: f.clone(),
            degree,
            verdict,
            basis_size: here.gb().len(),
            gb_stats: here.gb().stats().clone(),
            elapsed: start.elapsed(),
        });
        if !ok {
            overall = false;
            break;
        }
        current = Some(here.mod_out(std::slice::from_ref(f))?);
    }
    Ok(RegularSequenceReport { elements: fs.to_vec(), degree_sequence, stages, overall })
}

#[derive(Clone, Debug)]
pub struct DisjointnessReport {
    pub disjoint: bool,
    /// A class annihilating both elements, when one exists.
    pub common: Option<Polynomial>,
}

/// Whether `(I : f) ∩ (I : g) ⊆ I`.
pub fn annihilators_disjoint(q: &QuotientRing, f: &Polynomial, g: &Polynomial) -> Result<DisjointnessReport, RegSeqError> {
    let ring = q.ring();
    for h in [f, g] {
        ring.check(h).map_err(IdealError::from)?;
        if q.is_zero(h) {
            return Err(RegSeqError::ZeroElement);
        }
    }
    let a = q.ideal().colon(f)?;
    let b = q.ideal().colon(g)?;
    let meet = a.intersect(&b)?;
    let common = strategy::colon_witness(q, &meet)?;
    Ok(DisjointnessReport { disjoint: common.is_none(), common })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Index of the first witness `w` with `w c = 0`.
    AnnihilatedBy(usize),
    /// Annihilated by no witness and regular.
    Regular,
    /// Annihilated by no witness but a zero divisor.
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct ComponentScan {
    pub degree: u32,
    pub dimension: usize,
    pub classes: Vec<Polynomial>,
    pub verdicts: Vec<ClassVerdict>,
}

impl ComponentScan {
    pub fn annihilated(&self) -> usize {
        self.verdicts.iter().filter(|v| matches!(v, ClassVerdict::AnnihilatedBy(_))).count()
    }

    pub fn by_witness(&self, count: usize) -> Vec<usize> {
        let mut out = vec![0; count];
        for v in &self.verdicts {
            if let ClassVerdict::AnnihilatedBy(i) = v {
                out[*i] += 1;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub degrees: (u32, u32),
    pub witnesses: Vec<Polynomial>,
    pub components: Vec<ComponentScan>,
}

impl ScanReport {
    pub fn total_classes(&self) -> usize {
        self.components.iter().map(|c| c.classes.len()).sum()
    }

    /// Classes annihilated by no witness.
    pub fn unannihilated(&self) -> usize {
        self.components.iter().map(|c| c.classes.len() - c.annihilated()).sum()
    }

    pub fn pass(&self) -> bool {
        self.unannihilated() == 0
    }

    pub fn render(&self, ring: &Ring) -> String {
        let mut out = String::new();
        for (i, w) in self.witnesses.iter().enumerate() {
            let _ = writeln!(out, "witness {}: {}", i + 1, ring.format(w));
        }
        for c in &self.components {
            let by: Vec<String> = c.by_witness(self.witnesses.len()).iter().map(|n| n.to_string()).collect();
            let _ = writeln!(
                out,
                "degree {}: dimension {}, {} classes, annihilated {} (per witness {}), not annihilated {}",
                c.degree,
                c.dimension,
                c.classes.len(),
                c.annihilated(),
                by.join(","),
                c.classes.len() - c.annihilated()
            );
            for (cls, v) in c.classes.iter().zip(&c.verdicts) {
                match v {
                    ClassVerdict::AnnihilatedBy(_) => {}
                    ClassVerdict::Regular => {
                        let _ = writeln!(out, "  not annihilated: {} (regular)", ring.format(cls));
                    }
                    ClassVerdict::Unresolved => {
                        let _ = writeln!(out, "  not annihilated: {} (zero divisor)", ring.format(cls));
                    }
                }
            }
        }
        let _ = writeln!(out, "total: {} classes, {} not annihilated", self.total_classes(), self.unannihilated());
        let _ = writeln!(out, "{}", if self.pass() { "PASS" } else { "FAIL" });
        out
    }

    pub fn to_json(&self, ring: &Ring) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let verdicts: Vec<Value> = c
                    .verdicts
                    .iter()
                    .map(|v| match v {
                        ClassVerdict::AnnihilatedBy(i) => json!(i),
                        ClassVerdict::Regular => json!("regular"),
                        ClassVerdict::Unresolved => json!("unresolved"),
                    })
                    .collect();
                let open: Vec<String> = c
                    .classes
                    .iter()
                    .zip(&c.verdicts)
                    .filter(|(_, v)| !matches!(v, ClassVerdict::AnnihilatedBy(_)))
                    .map(|(cls, _)| ring.format(cls))
                    .collect();
                json!({
                    "degree": c.degree,
                    "dimension": c.dimension,
                    "classes": c.classes.len(),
                    "annihilated_by_witness": c.by_witness(self.witnesses.len()),
                    "not_annihilated": open,
                    "verdicts": verdicts,
                })
            })
            .collect();
        json!({
            "degrees": [self.degrees.0, self.degrees.1],
            "witnesses": self.witnesses.iter().map(|w| ring.format(w)).collect::<Vec<_>>(),
            "components": comps,
            "total_classes": self.total_classes(),
            "not_annihilated": self.unannihilated(),
            "pass": self.pass(),
        })
    }
}

fn check_witnesses(q: &QuotientRing, witnesses: &[Polynomial]) -> Result<(), RegSeqError> {
    for (index, w) in witnesses.iter().enumerate() {
        q.ring().check(w).map_err(IdealError::from)?;
        if q.is_zero(w) {
            return Err(RegSeqError::ZeroWitness { index, text: q.ring().format(w) });
        }
    }
    Ok(())
}

/// Classifies explicit classes against the witnesses; classes no witness
/// annihilates are tested for regularity.
pub fn scan_classes(
    q: &QuotientRing,
    witnesses: &[Polynomial],
    classes: &[Polynomial],
    cfg: &RegSeqConfig,
) -> Result<Vec<ClassVerdict>, RegSeqError> {
    check_witnesses(q, witnesses)?;
    let workers = Workers::new(cfg.jobs)?;
    classify(q, witnesses, classes, cfg, &workers)
}

fn classify(
    q: &QuotientRing,
    witnesses: &[Polynomial],
    classes: &[Polynomial],
    cfg: &RegSeqConfig,
    workers: &Workers,
) -> Result<Vec<ClassVerdict>, RegSeqError> {
    let ring = q.ring();
    workers
        .map(classes, |c| {
            if let Some(i) = witnesses.iter().position(|w| q.is_zero(&ring.mul(w, c))) {
                return Ok(ClassVerdict::AnnihilatedBy(i));
            }
            Ok(if decide_regular(q, c, cfg.strategy.as_ref())? { ClassVerdict::Regular } else { ClassVerdict::Unresolved })
        })
        .into_iter()
        .collect()
}

/// For every nonzero class up to scalars in degrees `lo..=hi`, the first witness annihilating it.
pub fn witness_scan(
    q: &QuotientRing,
    witnesses: &[Polynomial],
    degrees: (u32, u32),
    cfg: &RegSeqConfig,
) -> Result<ScanReport, RegSeqError> {
    let (lo, hi) = degrees;
    if lo > hi {
        return Err(RegSeqError::EmptyRange { lo, hi });
    }
    check_witnesses(q, witnesses)?;
    // check all caps before doing any work
    for d in lo..=hi {
        component_enumerate(q, d, cfg.enumeration_cap)?;
    }
    let workers = Workers::new(cfg.jobs)?;
    let mut components = Vec::new();
    for d in lo..=hi {
        let iter = component_enumerate(q, d, cfg.enumeration_cap)?;
        let dimension = iter.basis().len();
        let classes: Vec<Polynomial> = iter.collect();
        let verdicts = classify(q, witnesses, &classes, cfg, &workers)?;
        components.push(ComponentScan { degree: d, dimension, classes, verdicts });
    }
    Ok(ScanReport { degrees, witnesses: witnesses.to_vec(), components })
}

#[derive(Clone, Debug)]
pub struct RegularScanReport {
    pub degree: u32,
    pub dimension: usize,
    pub candidates: u64,
    /// Regular classes in canonical order.
    pub regular: Vec<Polynomial>,
}

impl RegularScanReport {
    pub fn render(&self, ring: &Ring) -> String {
        let mut out = format!(
            "degree {}: dimension {}, {} candidates, {} regular\n",
            self.degree,
            self.dimension,
            self.candidates,
            self.regular.len()
        );
        for f in &self.regular {
            let _ = writeln!(out, "  regular: {}", ring.format(f));
        }
        if self.regular.is_empty() {
            let _ = writeln!(out, "no regular class of degree {} (all {} candidates tested)", self.degree, self.candidates);
        }
        out
    }

    pub fn to_json(&self, ring: &Ring) -> Value {
        json!({
            "degree": self.degree,
            "dimension": self.dimension,
            "candidates": self.candidates,
            "regular": self.regular.iter().map(|f| ring.format(f)).collect::<Vec<_>>(),
        })
    }
}

/// All regular classes of degree `d` up to scalars.
pub fn exhaustive_regular_scan(q: &QuotientRing, d: u32, cfg: &RegSeqConfig) -> Result<RegularScanReport, RegSeqError> {
    let iter = component_enumerate(q, d, cfg.enumeration_cap)?;
    let dimension = iter.basis().len();
    let candidates = iter.total();
    let workers = Workers::new(cfg.jobs)?;
    let mut regular = Vec::new();
    let mut batch = Vec::with_capacity(BATCH);
    let mut iter = iter.peekable();
    while iter.peek().is_some() {
        batch.clear();
        batch.extend(iter.by_ref().take(BATCH));
        let verdicts = workers.map(&batch, |c| decide_regular(q, c, cfg.strategy.as_ref()));
        for (c, v) in batch.iter().zip(verdicts) {
            if v? {
                regular.push(c.clone());
            }
        }
    }
    Ok(RegularScanReport { degree: d, dimension, candidates, regular })
}

#[derive(Clone, Debug)]
pub enum SearchResult {
    Found(RegularSequenceReport),
    /// Every candidate sequence within the bounds was tested.
    Exhausted,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub degree_bounds: Vec<u32>,
    pub seeds: Vec<Polynomial>,
    pub result: SearchResult,
    pub candidates_tested: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        matches!(self.result, SearchResult::Found(_))
    }

    pub fn render(&self, ring: &Ring, timings: bool) -> String {
        let bounds: Vec<String> = self.degree_bounds.iter().map(|d| d.to_string()).collect();
        let mut out = format!("degree sequence sought: {}\n", bounds.join(","));
        for (i, s) in self.seeds.iter().enumerate() {
            let _ = writeln!(out, "fixed element {}: {}", i + 1, ring.format(s));
        }
        let _ = writeln!(out, "candidates tested: {}", self.candidates_tested);
        match &self.result {
            SearchResult::Found(report) => {
                out.push_str(&report.render(ring, timings));
                let _ = writeln!(out, "FOUND");
            }
            SearchResult::Exhausted => {
                let _ = writeln!(out, "NONE: all candidates within the bounds were tested");
            }
            SearchResult::BudgetExhausted => {
                let _ = writeln!(out, "NONE: candidate budget exhausted before the search completed");
            }
        }
        out
    }

    pub fn to_json(&self, ring: &Ring, timings: bool) -> Value {
        let (kind, report) = match &self.result {
            SearchResult::Found(r) => ("found", r.to_json(ring, timings)),
            SearchResult::Exhausted => ("exhausted", Value::Null),
            SearchResult::BudgetExhausted => ("budget_exhausted", Value::Null),
        };
        json!({
            "degree_bounds": self.degree_bounds,
            "seeds": self.seeds.iter().map(|f| ring.format(f)).collect::<Vec<_>>(),
            "result": kind,
            "report": report,
            "candidates_tested": self.candidates_tested,
        })
    }
}

enum Dfs {
    Found(Vec<Polynomial>),
    Exhausted,
    Budget,
}

struct Search<'a> {
    bounds: &'a [u32],
    seeds: &'a [Polynomial],
    cfg: &'a RegSeqConfig,
    workers: Workers,
    tested: u64,
}

impl Search<'_> {
    fn candidates(&self, q: &QuotientRing, level: usize) -> Result<Vec<Polynomial>, RegSeqError> {
        if let Some(seed) = self.seeds.get(level) {
            return Ok(vec![seed.clone()]);
        }
        let iter = component_enumerate(q, self.bounds[level], self.cfg.enumeration_cap)
            .map_err(|source| RegSeqError::Level { level: level + 1, source })?;
        Ok(iter.collect())
    }

    fn run(&mut self, q: &QuotientRing, level: usize, prefix: &mut Vec<Polynomial>) -> Result<Dfs, RegSeqError> {
        if level == self.bounds.len() {
            return Ok(Dfs::Found(prefix.clone()));
        }
        let candidates = self.candidates(q, level)?;
        for batch in candidates.chunks(BATCH) {
            let strategy = self.cfg.strategy.as_ref();
            let verdicts = self.workers.map(batch, |c| decide_regular(q, c, strategy));
            for (c, v) in batch.iter().zip(verdicts) {
                if let Some(budget) = self.cfg.candidate_budget {
                    if self.tested >= budget {
                        return Ok(Dfs::Budget);
                    }
                }
                self.tested += 1;
                if !v? {
                    continue;
                }
                let next = q.mod_out(std::slice::from_ref(c))?;
                prefix.push(c.clone());
                match self.run(&next, level + 1, prefix)? {
                    Dfs::Exhausted => {
                        prefix.pop();
                    }
                    other => return Ok(other),
                }
            }
        }
        Ok(Dfs::Exhausted)
    }
}

/// Depth-first search for a regular sequence with the given degrees.
///
/// Level `i` uses `seeds[i]` when given, otherwise every class of degree
/// `degree_bounds[i]` up to scalars in the quotient by the elements chosen
/// so far, in canonical order. The first complete sequence is returned.
pub fn search_regular_sequence(
    q: &QuotientRing,
    degree_bounds: &[u32],
    seeds: &[Polynomial],
    cfg: &RegSeqConfig,
) -> Result<SearchOutcome, RegSeqError> {
    if degree_bounds.is_empty() {
        return Err(RegSeqError::EmptyDegreeBounds);
    }
    if seeds.len() > degree_bounds.len() {
        return Err(RegSeqError::TooManySeeds { seeds: seeds.len(), levels: degree_bounds.len() });
    }
    for (index, (s, &expected)) in seeds.iter().zip(degree_bounds).enumerate() {
        let found = positive_degree(q.ring(), s)?;
        if found != expected {
            return Err(RegSeqError::SeedDegreeMismatch { index: index + 1, expected, found });
        }
    }
    let mut search = Search { bounds: degree_bounds, seeds, cfg, workers: Workers::new(cfg.jobs)?, tested: 0 };
    let result = match search.run(q, 0, &mut Vec::new())? {
        Dfs::Found(seq) => SearchResult::Found(verify_sequence(q, &seq, cfg)?),
        Dfs::Exhausted => SearchResult::Exhausted,
        Dfs::Budget => SearchResult::BudgetExhausted,
    };
    Ok(SearchOutcome { degree_bounds: degree_bounds.to_vec(), seeds: seeds.to_vec(), result, candidates_tested: search.tested })
}

/// Size of the candidate space at one search level, for reporting.
pub fn level_size(q: &QuotientRing, degree: u32) -> u128 {
    projective_count(q.ring().field().order(), q.standard_basis(degree).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groebner::GbOptions;
    use crate::ring::GeneratorSet;

    fn quotient(gens: &[(&str, u32)], rels: &[&str]) -> QuotientRing {
        let r = Ring::new(FieldSpec::prime(2).unwrap(), GeneratorSet::from_pairs(gens).unwrap());
        let rels = rels.iter().map(|s| r.parse(s).unwrap()).collect();
        QuotientRing::new(&r, rels, &GbOptions::default()).unwrap()
    }

    fn cfg() -> RegSeqConfig {
        RegSeqConfig { jobs: 1, ..RegSeqConfig::default() }
    }

    #[test]
    fn polynomial_ring_scan() {
        let q = quotient(&[("x", 1)], &[]);
        let report = exhaustive_regular_scan(&q, 1, &cfg()).unwrap();
        assert_eq!(report.regular, vec![q.parse("x").unwrap()]);
        let found = search_regular_sequence(&q, &[1], &[], &cfg()).unwrap();
        match found.result {
            SearchResult::Found(r) => assert_eq!(r.elements, vec![q.parse("x").unwrap()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn both_strategies_agree() {
        let q = quotient(&[("x", 1), ("y", 1), ("z", 1)], &["x*y", "x*z"]);
        let reg = StrategyRegistry::default();
        for text in ["x", "y", "z", "y + x", "z + y", "x + y + z", "y^2 + x^2"] {
            let f = q.parse(text).unwrap();
            let a = is_regular(&q, &f, reg.get("colon").unwrap().as_ref()).unwrap();
            let b = is_regular(&q, &f, reg.get("hilbert").unwrap().as_ref()).unwrap();
            assert_eq!(a, b, "{text}");
        }
        assert_eq!(is_regular(&q, &q.parse("x*y").unwrap(), &ColonTest).unwrap(), Verdict::ZeroInQuotient);
    }

    #[test]
    fn sequences() {
        let q = quotient(&[("x", 1), ("y", 1)], &[]);
        let report = verify_sequence(&q, &[], &cfg()).unwrap();
        assert!(report.overall && report.degree_sequence.is_empty());
        let seq = [q.parse("x").unwrap(), q.parse("y^2").unwrap()];
        let report = verify_sequence(&q, &seq, &cfg()).unwrap();
        assert!(report.overall);
        assert_eq!(report.degree_sequence, vec![1, 2]);
        let seq = [q.parse("x").unwrap(), q.parse("x").unwrap()];
        let report = verify_sequence(&q, &seq, &cfg()).unwrap();
        assert!(!report.overall);
        assert_eq!(report.stages[1].verdict, Verdict::ZeroInQuotient);
        let bad = q.parse("x + y^2").unwrap();
        assert!(matches!(verify_sequence(&q, &[bad], &cfg()), Err(RegSeqError::NonHomogeneous(_))));
        assert!(matches!(verify_sequence(&q, &[q.ring().one()], &cfg()), Err(RegSeqError::PositiveDegreeRequired(_))));
    }

    #[test]
    fn disjointness() {
        let q = quotient(&[("x", 1), ("y", 1), ("z", 1)], &["x*y"]);
        let x = q.parse("x").unwrap();
        let z = q.parse("z").unwrap();
        assert!(!annihilators_disjoint(&q, &x, &x).unwrap().disjoint);
        assert!(annihilators_disjoint(&q, &x, &z).unwrap().disjoint);
        assert!(annihilators_disjoint(&q, &x, &q.parse("y").unwrap()).unwrap().disjoint);
        assert_eq!(annihilators_disjoint(&q, &x, &q.parse("x*y").unwrap()).unwrap_err(), RegSeqError::ZeroElement);
    }

    #[test]
    fn witness_scans() {
        let q = quotient(&[("x", 1), ("y", 1)], &["x*y", "y^2"]);
        let w = [q.parse("y").unwrap()];
        let report = witness_scan(&q, &w, (1, 1), &cfg()).unwrap();
        assert_eq!(report.total_classes(), 3);
        // y kills x and y; x + y is not killed (y(x+y) = 0 too, so all pass)
        assert!(report.pass());
        let err = witness_scan(&q, &[q.ring().zero()], (1, 1), &cfg()).unwrap_err();
        assert!(matches!(err, RegSeqError::ZeroWitness { index: 0, .. }));
        let v = scan_classes(&q, &[q.parse("x").unwrap()], &[q.parse("x").unwrap()], &cfg()).unwrap();
        assert_eq!(v, vec![ClassVerdict::Unresolved]);
    }

    #[test]
    fn budget_and_seeds() {
        let q = quotient(&[("x", 1), ("y", 1)], &["x*y"]);
        let tight = RegSeqConfig { candidate_budget: Some(1), ..cfg() };
        let out = search_regular_sequence(&q, &[1, 1], &[], &tight).unwrap();
        assert!(matches!(out.result, SearchResult::BudgetExhausted));
        let out = search_regular_sequence(&q, &[1, 1], &[], &cfg()).unwrap();
        assert!(matches!(out.result, SearchResult::Exhausted));
        let seed = [q.parse("x^2").unwrap()];
        let err = search_regular_sequence(&q, &[1], &seed, &cfg()).unwrap_err();
        assert_eq!(err, RegSeqError::SeedDegreeMismatch { index: 1, expected: 1, found: 2 });
    }
}
