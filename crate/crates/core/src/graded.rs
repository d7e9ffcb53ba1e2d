//! Graded components of quotient rings: standard monomials, Hilbert
//! functions, enumeration of classes up to scalars, and Krull dimension.

use serde::Serialize;
use thiserror::Error;

use crate::field::Coeff;
use crate::groebner::GroebnerBasis;
use crate::ideal::QuotientRing;
use crate::ring::{Monomial, Polynomial, Ring, Term};

/// Default bound on the number of classes a single enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Largest generator count accepted by the exhaustive dimension search.
pub const MAX_DIMENSION_GENERATORS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("degree {degree} has {required} classes up to scalars, above the enumeration cap {cap}")]
    EnumerationTooLarge { degree: u32, required: u128, cap: u64 },
    #[error("dimension search supports at most {MAX_DIMENSION_GENERATORS} generators, got {0}")]
    TooManyGenerators(usize),
}

/// Monomials of weighted degree `d` not divisible by a leading monomial of `gb`, descending.
pub fn standard_monomials_of(gb: &GroebnerBasis, d: u32) -> Vec<Monomial> {
    let ring = gb.ring();
    let lms: Vec<&Monomial> = gb.leading_monomials().filter(|m| ring.deg(m) <= d).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u16; ring.nvars()];
    descend(ring.weights(), &lms, 0, d, &mut exps, &mut out);
    out.sort_by(|a, b| ring.compare(b, a));
    out
}

fn descend(weights: &[u32], lms: &[&Monomial], i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if i == weights.len() {
        if left == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    let w = weights[i];
    let mut e = 0u32;
    loop {
        exps[i] = e as u16;
        // a divisible partial product stays divisible after further multiplication
        if e == 0 || !lms.iter().any(|lm| divides_slice(lm.exponents(), exps)) {
            descend(weights, lms, i + 1, left - e * w, exps, out);
        } else {
            break;
        }
        if (e + 1) * w > left {
            break;
        }
        e += 1;
    }
    exps[i] = 0;
}

fn divides_slice(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Basis of the degree-`d` component of `R/I`, descending.
pub fn standard_monomials(q: &QuotientRing, d: u32) -> Vec<Monomial> {
    q.standard_basis(d).as_ref().clone()
}

/// Dimensions of the graded components of `R/I` in degrees `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub max_degree: u32,
    pub counts: Vec<u64>,
}

impl HilbertTable {
    pub fn get(&self, d: u32) -> Option<u64> {
        self.counts.get(d as usize).copied()
    }

    /// `d: count` per line.
    pub fn render(&self) -> String {
        self.counts.iter().enumerate().map(|(d, c)| format!("{d}: {c}\n")).collect()
    }
}

pub fn hilbert_function(q: &QuotientRing, max_degree: u32) -> HilbertTable {
    let counts = (0..=max_degree).map(|d| q.standard_basis(d).len() as u64).collect();
    HilbertTable { max_degree, counts }
}

/// Number of classes up to nonzero scalars in a `dim`-dimensional space over `F_q`.
pub fn projective_count(q: u64, dim: usize) -> u128 {
    if dim == 0 {
        return 0;
    }
    let q = q as u128;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_add(power);
        power = power.saturating_mul(q);
    }
    total
}

/// Nonzero classes of degree `d` up to scalars, as normal forms.
///
/// Coordinates are indexed by the standard monomials in descending order.
/// The first nonzero coordinate is 1; vectors are listed lexicographically
/// with field elements compared by their encoding.
pub fn component_enumerate(q: &QuotientRing, d: u32, cap: u64) -> Result<ComponentIter, GradedError> {
    let basis = q.standard_basis(d).as_ref().clone();
    ComponentIter::new(q.ring().clone(), d, basis, cap)
}

#[derive(Debug, Clone)]
pub struct ComponentIter {
    ring: Ring,
    basis: Vec<Monomial>,
    q: u64,
    total: u64,
    lead: usize,
    counter: u64,
    block: u64,
    done: bool,
}

impl ComponentIter {
    pub fn new(ring: Ring, degree: u32, basis: Vec<Monomial>, cap: u64) -> Result<ComponentIter, GradedError> {
        let q = ring.field().order();
        let required = projective_count(q, basis.len());
        if required > cap as u128 {
            return Err(GradedError::EnumerationTooLarge { degree, required, cap });
        }
        let n = basis.len();
        Ok(ComponentIter {
            ring,
            basis,
            q,
            total: required as u64,
            lead: n.saturating_sub(1),
            counter: 0,
            block: 1,
            done: n == 0,
        })
    }

    /// Number of classes the iterator yields in total.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
}

impl Iterator for ComponentIter {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.done {
            return None;
        }
        while self.counter >= self.block {
            // leading 1 moves one coordinate earlier; the tail grows by one digit
            if self.lead == 0 {
                self.done = true;
                return None;
            }
            self.lead -= 1;
            self.counter = 0;
            self.block = self.q.pow((self.basis.len() - 1 - self.lead) as u32);
        }
        let n = self.basis.len();
        let mut terms = Vec::with_capacity(n - self.lead);
        terms.push(Term { coeff: Coeff::ONE, mono: self.basis[self.lead].clone() });
        let tail = n - 1 - self.lead;
        let mut digits = vec![0u64; tail];
        let mut c = self.counter;
        for k in (0..tail).rev() {
            digits[k] = c % self.q;
            c /= self.q;
        }
        for (k, &dgt) in digits.iter().enumerate() {
            if dgt != 0 {
                terms.push(Term { coeff: Coeff(dgt as u32), mono: self.basis[self.lead + 1 + k].clone() });
            }
        }
        self.counter += 1;
        // basis is descending, so the terms are already canonical
        Some(self.ring.from_terms(terms))
    }
}

/// Dimension of `R/I` as the largest set of generators containing the
/// support of no leading monomial.
pub fn krull_dimension(q: &QuotientRing) -> Result<usize, GradedError> {
    krull_dimension_of(q.gb())
}

pub fn krull_dimension_of(gb: &GroebnerBasis) -> Result<usize, GradedError> {
    let n = gb.ring().nvars();
    if n > MAX_DIMENSION_GENERATORS {
        return Err(GradedError::TooManyGenerators(n));
    }
    if gb.is_unit_ideal() {
        return Ok(0);
    }
    let masks: Vec<u64> = gb.leading_monomials().map(|m| m.support_mask()).collect();
    let mut best = 0;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Numerator `N(t)` of the Hilbert series `N(t) / prod (1 - t^{w_i})` of
/// `R/<lms>`, as coefficients indexed by degree.
pub fn hilbert_numerator(lms: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let gens: Vec<Vec<u16>> = lms.iter().map(|m| m.exponents().to_vec()).collect();
    let mut out = numerator(minimalize(gens), weights);
    trim(&mut out);
    out
}

/// Hilbert series numerator of `R/I` from its reduced basis.
pub fn hilbert_numerator_of(gb: &GroebnerBasis) -> Vec<i64> {
    let lms: Vec<Monomial> = gb.leading_monomials().cloned().collect();
    hilbert_numerator(&lms, gb.ring().weights())
}

fn trim(p: &mut Vec<i64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn wdeg(m: &[u16], weights: &[u32]) -> usize {
    m.iter().zip(weights).map(|(&e, &w)| e as usize * w as usize).sum()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p * (1 - t^d)`.
fn times_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &x) in p.iter().enumerate() {
        out[i] += x;
        out[i + d] -= x;
    }
    out
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides_slice(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// Pivot recursion `N(I) = N(I + <x^e>) + t^{e w_x} N(I : x^e)` on a minimal generating set.
fn numerator(gens: Vec<Vec<u16>>, weights: &[u32]) -> Vec<i64> {
    // generators coprime to all others split off as factors (1 - t^deg)
    let mut factor = vec![1i64];
    let mut rest = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if gens.iter().enumerate().all(|(j, h)| i == j || coprime(g, h)) {
            factor = times_one_minus(&factor, wdeg(g, weights));
        } else {
            rest.push(g.clone());
        }
    }
    if rest.is_empty() {
        return factor;
    }
    // pivot on the variable shared by the most generators, at its smallest positive exponent
    let n = weights.len();
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let count = rest.iter().filter(|g| g[v] > 0).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    let e = rest.iter().filter(|g| g[v] > 0).map(|g| g[v]).min().unwrap();
    let mut pivot = vec![0u16; n];
    pivot[v] = e;

    let mut plus: Vec<Vec<u16>> = rest.iter().filter(|g| g[v] < e).cloned().collect();
    plus.push(pivot);
    let colon: Vec<Vec<u16>> = rest
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[v] = h[v].saturating_sub(e);
            h
        })
        .collect();
    let a = numerator(minimalize(plus), weights);
    let b = numerator(minimalize(colon), weights);
    let shift = e as usize * weights[v] as usize;
    let mut sum = vec![0i64; a.len().max(b.len() + shift)];
    for (i, &x) in a.iter().enumerate() {
        sum[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        sum[i + shift] += x;
    }
    poly_mul(&factor, &sum)
}

/// Hilbert function values `0..=max_degree` expanded from a numerator.
pub fn expand_series(numerator: &[i64], weights: &[u32], max_degree: u32) -> Vec<i64> {
    let len = max_degree as usize + 1;
    let mut series: Vec<i64> = (0..len).map(|i| numerator.get(i).copied().unwrap_or(0)).collect();
    for &w in weights {
        let w = w as usize;
        for i in w..len {
            series[i] += series[i - w];
        }
    }
    series
}

/// Multiplicity of `t = 1` as a root of `p`.
pub fn order_at_one(p: &[i64]) -> usize {
    let mut p = p.to_vec();
    let mut k = 0;
    loop {
        if p.iter().all(|&c| c == 0) {
            return usize::MAX;
        }
        if p.iter().sum::<i64>() != 0 {
            return k;
        }
        // synthetic division by (t - 1)
        let mut q = vec![0i64; p.len() - 1];
        let mut carry = 0i64;
        for i in (1..p.len()).rev() {
            carry += p[i];
            q[i - 1] = carry;
        }
        p = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::groebner::GbOptions;
    use crate::ring::GeneratorSet;

    fn quotient(field: FieldSpec, gens: &[(&str, u32)], rels: &[&str]) -> QuotientRing {
        let r = Ring::new(field, GeneratorSet::from_pairs(gens).unwrap());
        let rels = rels.iter().map(|s| r.parse(s).unwrap()).collect();
        QuotientRing::new(&r, rels, &GbOptions::default()).unwrap()
    }

    #[test]
    fn polynomial_ring_in_one_variable() {
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("z", 1)], &[]);
        assert_eq!(hilbert_function(&q, 5).counts, vec![1; 6]);
    }

    #[test]
    fn quotient_by_all_generators() {
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("x", 1), ("w", 2)], &["x^2", "w"]);
        let q = q.mod_out(&[q.parse("x").unwrap()]).unwrap();
        assert_eq!(hilbert_function(&q, 4).counts, vec![1, 0, 0, 0, 0]);
        assert_eq!(krull_dimension(&q).unwrap(), 0);
    }

    #[test]
    fn enumeration_order_and_count() {
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("z", 1), ("y", 1), ("x", 1)], &[]);
        let classes: Vec<String> = component_enumerate(&q, 1, 100).unwrap().map(|f| q.ring().format(&f)).collect();
        assert_eq!(classes, ["x", "y", "y + x", "z", "z + x", "z + y", "z + y + x"]);
        let err = component_enumerate(&q, 2, 10).unwrap_err();
        assert_eq!(err, GradedError::EnumerationTooLarge { degree: 2, required: 63, cap: 10 });
    }

    #[test]
    fn projective_normalization_over_f4() {
        let q = quotient(FieldSpec::new(2, 2, None).unwrap(), &[("x", 1)], &[]);
        assert_eq!(component_enumerate(&q, 1, 10).unwrap().count(), 1);
        let q = quotient(FieldSpec::new(2, 2, None).unwrap(), &[("x", 1), ("y", 1)], &[]);
        let all: Vec<Polynomial> = component_enumerate(&q, 1, 10).unwrap().collect();
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|f| f.leading_coeff() == Some(Coeff::ONE)));
    }

    #[test]
    fn dimensions() {
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("x", 1), ("y", 1), ("z", 1)], &[]);
        assert_eq!(krull_dimension(&q).unwrap(), 3);
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("x", 1), ("y", 1)], &["x*y"]);
        assert_eq!(krull_dimension(&q).unwrap(), 1);
    }

    #[test]
    fn numerators_expand_to_hilbert_functions() {
        let q = quotient(FieldSpec::prime(2).unwrap(), &[("x", 1), ("y", 1), ("w", 2)], &["x*y", "x^3", "y*w^2", "x^2*w"]);
        let num = hilbert_numerator_of(q.gb());
        let series = expand_series(&num, q.ring().weights(), 10);
        let table = hilbert_function(&q, 10);
        assert_eq!(series, table.counts.iter().map(|&c| c as i64).collect::<Vec<_>>());
        assert_eq!(order_at_one(&num), 3 - krull_dimension(&q).unwrap());
    }

    #[test]
    fn order_at_one_counts_roots() {
        assert_eq!(order_at_one(&[1]), 0);
        assert_eq!(order_at_one(&[1, -1]), 1);
        assert_eq!(order_at_one(&[1, -2, 1]), 2);
    }
}
