//! Interchangeable regularity tests, registered by name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::ideal::{Ideal, IdealError, QuotientRing};
use crate::ring::Polynomial;

use super::Verdict;

pub const DEFAULT_STRATEGY: &str = "hilbert";

/// Decides whether a nonzero homogeneous class of positive degree is a
/// nonzerodivisor, producing a witness otherwise.
pub trait RegularityTest: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// `f` is a nonzero normal form of weighted degree `degree >= 1`.
    fn test(&self, q: &QuotientRing, f: &Polynomial, degree: u32) -> Result<Verdict, IdealError>;

    /// Regularity without a witness; strategies may answer this more cheaply.
    fn decide(&self, q: &QuotientRing, f: &Polynomial, degree: u32) -> Result<bool, IdealError> {
        Ok(self.test(q, f, degree)?.is_regular())
    }
}

impl fmt::Debug for dyn RegularityTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularityTest({})", self.name())
    }
}

/// Smallest basis element of `(I : f)` outside `I`, reduced and monic.
pub fn colon_witness(q: &QuotientRing, colon: &Ideal) -> Result<Option<Polynomial>, IdealError> {
    for g in colon.gb()?.polys() {
        let h = q.normal_form(g);
        if !h.is_zero() {
            return Ok(Some(q.ring().monic(&h)));
        }
    }
    Ok(None)
}

/// `f` is regular iff `(I : f) = I`.
#[derive(Debug, Default, Clone, Copy)]
pub struct ColonTest;

impl RegularityTest for ColonTest {
    fn name(&self) -> &'static str {
        "colon"
    }

    fn description(&self) -> &'static str {
        "compare the colon ideal (I : f) with I"
    }

    fn test(&self, q: &QuotientRing, f: &Polynomial, _degree: u32) -> Result<Verdict, IdealError> {
        let colon = q.ideal().colon(f)?;
        Ok(match colon_witness(q, &colon)? {
            None => Verdict::Regular,
            Some(witness) => Verdict::ZeroDivisor { witness },
        })
    }
}

/// `f` of degree `d` is regular iff the Hilbert series of `R/(I + f)` is
/// `(1 - t^d)` times that of `R/I`, read off the leading-monomial ideals.
/// The colon ideal is computed only to produce a witness.
#[derive(Debug, Default, Clone, Copy)]
pub struct HilbertSeriesTest;

impl RegularityTest for HilbertSeriesTest {
    fn name(&self) -> &'static str {
        "hilbert"
    }

    fn description(&self) -> &'static str {
        "compare Hilbert series of R/I and R/(I + f), colon ideal for witnesses"
    }

    fn test(&self, q: &QuotientRing, f: &Polynomial, degree: u32) -> Result<Verdict, IdealError> {
        if self.decide(q, f, degree)? {
            return Ok(Verdict::Regular);
        }
        ColonTest.test(q, f, degree)
    }

    fn decide(&self, q: &QuotientRing, f: &Polynomial, degree: u32) -> Result<bool, IdealError> {
        let extended = q.gb().extend(std::slice::from_ref(f), q.options())?;
        let lms: Vec<_> = extended.leading_monomials().cloned().collect();
        let after = crate::graded::hilbert_numerator(&lms, q.ring().weights());
        let mut expected = vec![0i64; q.hilbert_numerator().len() + degree as usize];
        for (i, &c) in q.hilbert_numerator().iter().enumerate() {
            expected[i] += c;
            expected[i + degree as usize] -= c;
        }
        while expected.len() > 1 && *expected.last().unwrap() == 0 {
            expected.pop();
        }
        Ok(after == expected)
    }
}

/// Regularity tests available by name.
#[derive(Clone)]
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Arc<dyn RegularityTest>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut reg = StrategyRegistry::empty();
        reg.register(Arc::new(ColonTest));
        reg.register(Arc::new(HilbertSeriesTest));
        reg
    }
}

impl StrategyRegistry {
    pub fn empty() -> StrategyRegistry {
        StrategyRegistry { entries: BTreeMap::new() }
    }

    /// Adds or replaces the strategy under its own name.
    pub fn register(&mut self, strategy: Arc<dyn RegularityTest>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn RegularityTest>> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn RegularityTest>> {
        self.entries.values()
    }
}

impl fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}
