//! Ideals, sums, intersections, colon ideals, and quotient rings.
//!
//! Intersections use an auxiliary variable `t`: `I ∩ J` is the `t`-free part
//! of a Gröbner basis of `<t*I, (1-t)*J>` under an elimination order with
//! `t` in the eliminated block. These are the only inhomogeneous Gröbner
//! computations in the crate; they run without truncation.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::field::Coeff;
use crate::groebner::{buchberger, GbError, GbOptions, GroebnerBasis};
use crate::presentation::{Metadata, Presentation};
use crate::ring::{Monomial, Polynomial, Ring, RingError};

/// Name of the auxiliary intersection variable; `#` keeps it out of user namespaces.
const AUX_NAME: &str = "#t";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ideals live in different rings")]
    ContextMismatch,
    #[error("generator `{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("element is zero in the quotient ring")]
    ZeroElement,
    #[error("intersection generator `{generator}` is not divisible by `{divisor}`")]
    ExactDivisionFailure { generator: String, divisor: String },
}

/// Homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    opts: GbOptions,
    /// Known basis of a sub-ideal; the basis of `self` is computed by extending it.
    seed: Option<Arc<GroebnerBasis>>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), opts: self.opts.clone(), seed: self.seed.clone(), gb }
    }
}

impl Ideal {
    /// Ideal generated by `gens`; zero generators are dropped, the rest must be homogeneous.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>, opts: &GbOptions) -> Result<Ideal, IdealError> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            ring.check(&g)?;
            if g.is_zero() {
                continue;
            }
            if !ring.is_homogeneous(&g) {
                return Err(IdealError::NonHomogeneous(ring.format(&g)));
            }
            kept.push(g);
        }
        Ok(Ideal { ring: ring.clone(), gens: kept, opts: opts.clone(), seed: None, gb: OnceLock::new() })
    }

    /// Ideal whose generators are an existing reduced basis.
    pub fn from_basis(gb: Arc<GroebnerBasis>, opts: &GbOptions) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal { ring: gb.ring().clone(), gens: gb.polys().to_vec(), opts: opts.clone(), seed: None, gb: cell }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// Reduced Gröbner basis, computed on first use. Concurrent first calls may
    /// both compute; the results are identical and one is kept.
    pub fn gb(&self) -> Result<&Arc<GroebnerBasis>, IdealError> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let basis = match &self.seed {
            Some(seed) => {
                let extra: Vec<Polynomial> = self.gens.iter().skip(seed.len()).cloned().collect();
                seed.extend(&extra, &self.opts)?
            }
            None => buchberger(&self.ring, &self.gens, &self.opts)?,
        };
        let _ = self.gb.set(Arc::new(basis));
        Ok(self.gb.get().unwrap())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        self.ring.check(f)?;
        Ok(self.gb()?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        self.same_ring(other)?;
        let gb = self.gb()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    fn same_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(IdealError::ContextMismatch)
        }
    }

    /// `I + J`. When `I`'s basis is known it seeds the new computation.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.same_ring(other)?;
        match self.gb.get() {
            Some(b) => {
                let mut gens = b.polys().to_vec();
                gens.extend(other.gens.iter().cloned());
                Ok(Ideal { ring: self.ring.clone(), gens, opts: self.opts.clone(), seed: Some(b.clone()), gb: OnceLock::new() })
            }
            None => {
                let mut gens = self.gens.clone();
                gens.extend(other.gens.iter().cloned());
                Ok(Ideal { ring: self.ring.clone(), gens, opts: self.opts.clone(), seed: None, gb: OnceLock::new() })
            }
        }
    }

    pub fn sum_with(&self, extra: &[Polynomial]) -> Result<Ideal, IdealError> {
        let other = Ideal::new(&self.ring, extra.to_vec(), &self.opts)?;
        self.sum(&other)
    }

    /// `I ∩ J` by elimination of an auxiliary variable.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.same_ring(other)?;
        let ring = &self.ring;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ideal::new(ring, vec![], &self.opts);
        }
        let aux = ring.with_auxiliary_front(&[AUX_NAME], &[1]);
        let t = aux.var(0);
        let one_minus_t = aux.sub(&aux.one(), &t);
        let t_mono = Monomial::var(aux.nvars(), 0);

        // t * G_I is already a reduced basis under the elimination order
        let seed: Vec<Polynomial> =
            self.gb()?.polys().iter().map(|g| aux.mul_term(Coeff::ONE, &t_mono, &aux.lift_front(g, 1))).collect();
        let seed_gb = GroebnerBasis::from_reduced(aux.clone(), seed);
        let rest: Vec<Polynomial> = other.gens.iter().map(|g| aux.mul(&one_minus_t, &aux.lift_front(g, 1))).collect();
        let opts = GbOptions { degree_cap: self.opts.degree_cap.map(|c| c + 1), truncate_above: None };
        let elim = seed_gb.extend(&rest, &opts)?;
        let gens: Vec<Polynomial> = elim.free_of_front(1).into_iter().map(|g| ring.project_front(g, 1)).collect();
        Ideal::new(ring, gens, &self.opts)
    }

    /// `(I : f) = {g : g f ∈ I}`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal, IdealError> {
        let ring = &self.ring;
        ring.check(f)?;
        if f.is_zero() {
            return Err(IdealError::ZeroElement);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(ring, vec![f.clone()], &self.opts)?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            match ring.exact_div(g, f) {
                Some(h) => gens.push(h),
                None => return Err(IdealError::ExactDivisionFailure { generator: ring.format(g), divisor: ring.format(f) }),
            }
        }
        Ideal::new(ring, gens, &self.opts)
    }

    /// Equality of ideals as equality of reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool, IdealError> {
        self.same_ring(other)?;
        Ok(**self.gb()? == **other.gb()?)
    }
}

/// `R/I` for a presentation: the ring, the reduced basis of the relation
/// ideal, and caches of graded data.
#[derive(Debug)]
pub struct QuotientRing {
    ideal: Ideal,
    meta: Metadata,
    /// Extra elements divided out beyond the presentation's relations, as text.
    modded_out: Vec<String>,
    standard_cache: Mutex<BTreeMap<u32, Arc<Vec<Monomial>>>>,
    numerator: OnceLock<Vec<i64>>,
}

impl QuotientRing {
    pub fn new(ring: &Ring, relations: Vec<Polynomial>, opts: &GbOptions) -> Result<QuotientRing, IdealError> {
        let ideal = Ideal::new(ring, relations, opts)?;
        ideal.gb()?;
        Ok(QuotientRing::from_ideal(ideal, Metadata::default(), vec![]))
    }

    fn from_ideal(ideal: Ideal, meta: Metadata, modded_out: Vec<String>) -> QuotientRing {
        QuotientRing { ideal, meta, modded_out, standard_cache: Mutex::new(BTreeMap::new()), numerator: OnceLock::new() }
    }

    pub fn from_presentation(pres: &Presentation, opts: &GbOptions) -> Result<QuotientRing, IdealError> {
        let ideal = Ideal::new(pres.ring(), pres.relations().to_vec(), opts)?;
        ideal.gb()?;
        Ok(QuotientRing::from_ideal(ideal, pres.meta().clone(), vec![]))
    }

    /// `R/(I + <extra>)`.
    pub fn mod_out(&self, extra: &[Polynomial]) -> Result<QuotientRing, IdealError> {
        let ideal = self.ideal.sum_with(extra)?;
        ideal.gb()?;
        let mut modded = self.modded_out.clone();
        modded.extend(extra.iter().map(|f| self.ring().format(f)));
        Ok(QuotientRing::from_ideal(ideal, self.meta.clone(), modded))
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gb(&self) -> &Arc<GroebnerBasis> {
        self.ideal.gb().expect("computed on construction")
    }

    pub fn meta(&self) -> &Metadata {
        &self.meta
    }

    pub fn modded_out(&self) -> &[String] {
        &self.modded_out
    }

    pub fn options(&self) -> &GbOptions {
        self.ideal.options()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, crate::ring::ParseError> {
        self.ring().parse(text)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    /// `Ann(f̄)` as `(I : f)` together with minimal generators of `(I : f)/I`.
    pub fn annihilator(&self, f: &Polynomial) -> Result<Annihilator, IdealError> {
        self.ring().check(f)?;
        if self.is_zero(f) {
            return Err(IdealError::ZeroElement);
        }
        let colon = self.ideal.colon(f)?;
        let classes = minimal_generators_mod(&self.ideal, &colon)?;
        Ok(Annihilator { colon, classes })
    }

    /// Standard monomials of weighted degree `d`, descending, cached.
    pub fn standard_basis(&self, d: u32) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.standard_cache.lock().unwrap().get(&d) {
            return b.clone();
        }
        let basis = Arc::new(crate::graded::standard_monomials_of(self.gb(), d));
        self.standard_cache.lock().unwrap().insert(d, basis.clone());
        basis
    }

    /// Numerator of the Hilbert series over `prod (1 - t^{w_i})`, cached.
    pub fn hilbert_numerator(&self) -> &[i64] {
        self.numerator.get_or_init(|| crate::graded::hilbert_numerator_of(self.gb()))
    }
}

/// Result of an annihilator computation.
#[derive(Debug, Clone)]
pub struct Annihilator {
    /// `(I : f)` in the polynomial ring.
    pub colon: Ideal,
    /// Nonzero classes generating `(I : f)/I` minimally, in normal form, ascending.
    pub classes: Vec<Polynomial>,
}

impl Annihilator {
    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Greedy minimal generators of `big / small` in ascending order, reduced modulo `small`.
fn minimal_generators_mod(small: &Ideal, big: &Ideal) -> Result<Vec<Polynomial>, IdealError> {
    let small_gb = small.gb()?.clone();
    let mut candidates: Vec<Polynomial> = big
        .gb()?
        .polys()
        .iter()
        .map(|g| small_gb.normal_form(g))
        .filter(|g| !g.is_zero())
        .map(|g| small.ring().monic(&g))
        .collect();
    let ring = small.ring();
    candidates.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut current = small_gb;
    for c in candidates {
        if !current.contains(&c) {
            current = Arc::new(current.extend(std::slice::from_ref(&c), small.options())?);
            kept.push(c);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::GeneratorSet;

    fn ring() -> Ring {
        let gens = GeneratorSet::from_pairs(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        Ring::new(FieldSpec::prime(2).unwrap(), gens)
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect(), &GbOptions::default()).unwrap()
    }

    #[test]
    fn sums() {
        let r = ring();
        let i = ideal(&r, &["x"]);
        assert!(i.sum(&ideal(&r, &[])).unwrap().equals(&i).unwrap());
        let xy = i.sum(&ideal(&r, &["y"])).unwrap();
        assert!(xy.equals(&ideal(&r, &["x", "y"])).unwrap());
        i.gb().unwrap();
        let seeded = i.sum(&ideal(&r, &["y"])).unwrap();
        assert!(seeded.equals(&xy).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring();
        let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(meet.equals(&ideal(&r, &["x*y"])).unwrap());
        let i = ideal(&r, &["x^2 + y*z", "z^3"]);
        assert!(i.intersect(&i).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn colons() {
        let r = ring();
        let x = r.parse("x").unwrap();
        let c = ideal(&r, &["x*y"]).colon(&x).unwrap();
        assert!(c.equals(&ideal(&r, &["y"])).unwrap());
        let i = ideal(&r, &["x*y", "z^2"]);
        assert!(i.colon(&r.one()).unwrap().equals(&i).unwrap());
        assert_eq!(i.colon(&r.zero()).unwrap_err(), IdealError::ZeroElement);
    }

    #[test]
    fn equality() {
        let r = ring();
        assert!(!ideal(&r, &["x"]).equals(&ideal(&r, &["x^2"])).unwrap());
        let i = ideal(&r, &["x*y", "y*z"]);
        let f = r.parse("x*y*z + y*z^2").unwrap();
        assert!(i.equals(&i.sum_with(&[f]).unwrap()).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring();
        let err = Ideal::new(&r, vec![r.parse("x + y^2").unwrap()], &GbOptions::default()).unwrap_err();
        assert!(matches!(err, IdealError::NonHomogeneous(_)));
    }

    #[test]
    fn annihilators_in_quotients() {
        let r = ring();
        let q = QuotientRing::new(&r, vec![r.parse("x*y").unwrap()], &GbOptions::default()).unwrap();
        let ann = q.annihilator(&r.parse("x").unwrap()).unwrap();
        assert_eq!(ann.classes, vec![r.parse("y").unwrap()]);
        let ann = q.annihilator(&r.parse("z").unwrap()).unwrap();
        assert!(ann.is_zero());
        assert_eq!(q.annihilator(&r.parse("x*y").unwrap()).unwrap_err(), IdealError::ZeroElement);
    }
}
