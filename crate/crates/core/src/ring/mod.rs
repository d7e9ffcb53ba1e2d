//! Generators with degrees, monomial orders, and polynomials in canonical form.

mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{Coeff, FieldSpec};

pub use monomial::{Exponents, Monomial, MonomialOrder, OrderKind};
pub use parse::{ParseError, ParseErrorKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("polynomial does not belong to this ring")]
    ContextMismatch,
    #[error("invalid generator name `{0}`")]
    InvalidGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator order must be a permutation of the existing generators")]
    BadPermutation,
}

/// Ordered generator names with positive integer degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GeneratorSet {
    pub fn new() -> GeneratorSet {
        GeneratorSet::default()
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, u32)]) -> Result<GeneratorSet, RingError> {
        let mut gens = GeneratorSet::new();
        for (name, deg) in pairs {
            gens.push(name.as_ref(), *deg)?;
        }
        Ok(gens)
    }

    pub fn push(&mut self, name: &str, degree: u32) -> Result<(), RingError> {
        if !is_valid_identifier(name) {
            return Err(RingError::InvalidGenerator(name.to_string()));
        }
        if self.index_of(name).is_some() {
            return Err(RingError::DuplicateGenerator(name.to_string()));
        }
        if degree == 0 {
            return Err(RingError::ZeroDegree(name.to_string()));
        }
        self.names.push(name.to_string());
        self.degrees.push(degree);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Terms strictly descending under the ambient order, no zero coefficients.
/// Only a [`Ring`] creates these, so the canonical form is an invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<Coeff> {
        self.terms.first().map(|t| t.coeff)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Polynomial {
        Polynomial { terms }
    }
}

/// Polynomial ring over a finite field with weighted generators and a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: FieldSpec,
    gens: GeneratorSet,
    order: MonomialOrder,
}

impl Ring {
    /// Ring with the default weighted degree-reverse-lexicographic order.
    pub fn new(field: FieldSpec, gens: GeneratorSet) -> Ring {
        let order = MonomialOrder::weighted_degrevlex(gens.degrees().to_vec());
        Ring { field, gens, order }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        assert_eq!(order.weights().len(), self.nvars());
        Ring { field: self.field.clone(), gens: self.gens.clone(), order }
    }

    pub fn with_field(&self, field: FieldSpec) -> Ring {
        Ring { field, gens: self.gens.clone(), order: self.order.clone() }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn weights(&self) -> &[u32] {
        self.gens.degrees()
    }

    pub fn weighted_degree(&self, m: &Monomial) -> Result<u32, RingError> {
        self.check_monomial(m)?;
        Ok(m.weighted_degree(self.weights()))
    }

    #[inline]
    pub(crate) fn deg(&self, m: &Monomial) -> u32 {
        m.weighted_degree(self.weights())
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<(), RingError> {
        if m.nvars() != self.nvars() {
            return Err(RingError::LengthMismatch { expected: self.nvars(), found: m.nvars() });
        }
        Ok(())
    }

    pub fn mono_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, RingError> {
        self.check_monomial(a)?;
        self.check_monomial(b)?;
        Ok(self.order.compare(a, b))
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Verifies that `f` is a canonical polynomial of this ring.
    pub fn check(&self, f: &Polynomial) -> Result<(), RingError> {
        let q = self.field.order();
        for t in &f.terms {
            if t.mono.nvars() != self.nvars() || t.coeff.is_zero() || t.coeff.0 as u64 >= q {
                return Err(RingError::ContextMismatch);
            }
        }
        let sorted = f.terms.windows(2).all(|w| self.compare(&w[0].mono, &w[1].mono) == Ordering::Greater);
        if sorted {
            Ok(())
        } else {
            Err(RingError::ContextMismatch)
        }
    }

    // ---- constructors ----

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Coeff::ONE)
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn term(&self, c: Coeff, m: Monomial) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![Term { coeff: c, mono: m }] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(Coeff::ONE, m)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars(), i))
    }

    pub fn var_by_name(&self, name: &str) -> Result<Polynomial, RingError> {
        let i = self.gens.index_of(name).ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        Ok(self.var(i))
    }

    /// Sorts, merges equal monomials, and drops zeros.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Polynomial {
        terms.sort_by(|a, b| self.compare(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = self.field.cadd(last.coeff, t.coeff),
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    // ---- arithmetic ----

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        Polynomial { terms: self.axpy(&f.terms, Coeff::ONE, None, &g.terms) }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        Polynomial { terms: self.axpy(&f.terms, self.field.cneg(Coeff::ONE), None, &g.terms) }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(self.field.cneg(Coeff::ONE), f)
    }

    pub fn scale(&self, c: Coeff, f: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|t| Term { coeff: self.field.cmul(c, t.coeff), mono: t.mono.clone() }).collect() }
    }

    /// `c * m * f`; multiplying by a monomial preserves the order of terms.
    pub fn mul_term(&self, c: Coeff, m: &Monomial, f: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|t| Term { coeff: self.field.cmul(c, t.coeff), mono: t.mono.mul(m) }).collect() }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc: Vec<Term> = Vec::new();
        for t in &small.terms {
            acc = self.axpy(&acc, t.coeff, Some(&t.mono), &large.terms);
        }
        Polynomial { terms: acc }
    }

    pub fn pow(&self, f: &Polynomial, mut e: u32) -> Polynomial {
        let mut result = self.one();
        let mut base = f.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Merge of `p + c * m * g` for term slices already in canonical order.
    pub(crate) fn axpy(&self, p: &[Term], c: Coeff, m: Option<&Monomial>, g: &[Term]) -> Vec<Term> {
        let field = &self.field;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term {
            coeff: field.cmul(c, t.coeff),
            mono: match m {
                Some(m) => t.mono.mul(m),
                None => t.mono.clone(),
            },
        };
        while i < p.len() && j < g.len() {
            let gj = shifted(&g[j]);
            match self.compare(&p[i].mono, &gj.mono) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    if !gj.coeff.is_zero() {
                        out.push(gj);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.cadd(p[i].coeff, gj.coeff);
                    if !s.is_zero() {
                        out.push(Term { coeff: s, mono: gj.mono });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p[i..]);
        for t in &g[j..] {
            let t = shifted(t);
            if !t.coeff.is_zero() {
                out.push(t);
            }
        }
        out
    }

    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coeff() {
            Some(c) if c != Coeff::ONE => self.scale(self.field.cinv(c), f),
            _ => f.clone(),
        }
    }

    /// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
    pub fn exact_div(&self, f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
        let lt = g.leading_term()?;
        let lc_inv = self.field.cinv(lt.coeff);
        let mut rem = f.terms.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some(head) = rem.first() {
            let m = head.mono.checked_div(&lt.mono)?;
            let c = self.field.cmul(head.coeff, lc_inv);
            rem = self.axpy(&rem, self.field.cneg(c), Some(&m), &g.terms);
            quot.push(Term { coeff: c, mono: m });
        }
        Some(Polynomial { terms: quot })
    }

    // ---- grading ----

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self, f: &Polynomial) -> Option<u32> {
        f.terms.iter().map(|t| self.deg(&t.mono)).max()
    }

    /// The common weighted degree of all terms, if `f` is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, f: &Polynomial) -> Option<u32> {
        let d = self.deg(&f.leading_monomial()?.clone());
        f.terms.iter().all(|t| self.deg(&t.mono) == d).then_some(d)
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.homogeneous_degree(f).is_some()
    }

    // ---- related rings ----

    /// Prepends auxiliary generators (not subject to name validation) and
    /// switches to the elimination order with them as the eliminated block.
    pub fn with_auxiliary_front(&self, names: &[&str], degrees: &[u32]) -> Ring {
        let mut gens = GeneratorSet::new();
        for (n, d) in names.iter().zip(degrees) {
            gens.names.push((*n).to_string());
            gens.degrees.push(*d);
        }
        gens.names.extend(self.gens.names.iter().cloned());
        gens.degrees.extend(self.gens.degrees.iter().copied());
        let mut weights = degrees.to_vec();
        weights.extend_from_slice(self.weights());
        let order = MonomialOrder::elimination(weights, names.len());
        Ring { field: self.field.clone(), gens, order }
    }

    /// Maps `f` from `base` into this ring, which has `count` extra leading generators.
    pub fn lift_front(&self, f: &Polynomial, count: usize) -> Polynomial {
        let terms = f.terms.iter().map(|t| Term { coeff: t.coeff, mono: t.mono.prepend_zeros(count) }).collect();
        self.from_terms(terms)
    }

    /// Inverse of [`Ring::lift_front`] for polynomials free of the leading `count` generators.
    pub fn project_front(&self, f: &Polynomial, count: usize) -> Polynomial {
        let terms = f.terms.iter().map(|t| Term { coeff: t.coeff, mono: t.mono.drop_front(count) }).collect();
        self.from_terms(terms)
    }

    /// Same generators listed in a different order; `order[i]` is the old index of new generator `i`.
    pub fn permuted(&self, order: &[usize]) -> Result<Ring, RingError> {
        let mut seen = vec![false; self.nvars()];
        if order.len() != self.nvars() {
            return Err(RingError::BadPermutation);
        }
        for &i in order {
            if i >= self.nvars() || seen[i] {
                return Err(RingError::BadPermutation);
            }
            seen[i] = true;
        }
        let gens = GeneratorSet {
            names: order.iter().map(|&i| self.gens.names[i].clone()).collect(),
            degrees: order.iter().map(|&i| self.gens.degrees[i]).collect(),
        };
        Ok(Ring::new(self.field.clone(), gens))
    }

    /// Moves `f` (a polynomial of `from`) into this ring by generator name.
    pub fn import(&self, from: &Ring, f: &Polynomial) -> Result<Polynomial, RingError> {
        if from.field != self.field {
            return Err(RingError::ContextMismatch);
        }
        let map: Vec<usize> = from
            .gens
            .names
            .iter()
            .map(|n| self.gens.index_of(n).ok_or_else(|| RingError::UnknownGenerator(n.clone())))
            .collect::<Result<_, _>>()?;
        let terms = f
            .terms
            .iter()
            .map(|t| {
                let mut m = Monomial::one(self.nvars());
                for (old, &e) in t.mono.exponents().iter().enumerate() {
                    m.exponents_mut()[map[old]] += e;
                }
                Term { coeff: t.coeff, mono: m }
            })
            .collect();
        Ok(self.from_terms(terms))
    }

    // ---- text ----

    pub fn parse(&self, text: &str) -> Result<Polynomial, ParseError> {
        parse::parse_polynomial(self, text)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(self.gens.name(i));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    fn format_coeff_factor(&self, c: Coeff) -> String {
        match self.field.as_prime_residue(c) {
            Some(n) => n.to_string(),
            None => format!("({})", self.field.format_coeff(c)),
        }
    }

    /// Canonical text: terms descending, `*` between factors, unit coefficients omitted.
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = f
            .terms
            .iter()
            .map(|t| {
                let coeff = self.format_coeff_factor(t.coeff);
                if t.mono.is_one() {
                    coeff
                } else if t.coeff == Coeff::ONE {
                    self.format_monomial(&t.mono)
                } else {
                    format!("{coeff}*{}", self.format_monomial(&t.mono))
                }
            })
            .collect();
        parts.join(" + ")
    }
}
