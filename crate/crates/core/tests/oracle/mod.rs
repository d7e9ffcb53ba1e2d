//! Dense linear algebra over a prime field, used to compute graded pieces
//! of ideals without Gröbner bases.

#![allow(dead_code)]

use std::collections::HashMap;

use gcrs_core::{Monomial, Polynomial, Ring};

/// Exponent vectors of weighted degree `d`, in no particular order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Vec<u16>> {
    fn go(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            cur.push(e as u16);
            go(weights, i + 1, left - e * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Row-reduced subspace of the degree-`d` component of a polynomial ring over F_p.
pub struct Span {
    p: u32,
    index: HashMap<Vec<u16>, usize>,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub fn new(ring: &Ring, d: u32) -> Span {
        let field = ring.field();
        assert!(field.is_prime_field(), "oracle needs a prime field");
        let index = monomials_of_degree(ring.weights(), d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        Span { p: field.characteristic(), index, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.index.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn vector(&self, f: &Polynomial) -> Vec<u32> {
        let mut v = vec![0; self.index.len()];
        for t in f.terms() {
            v[self.index[t.mono.exponents()]] = t.coeff.0 % self.p;
        }
        v
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p as u64;
        for (pivot, row) in &self.rows {
            let c = v[*pivot] as u64;
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = ((*a as u64 + (p - c) * *b as u64) % p) as u32;
                }
            }
        }
        v
    }

    fn inverse(&self, a: u32) -> u32 {
        (1..self.p).find(|b| (a as u64 * *b as u64) % self.p as u64 == 1).unwrap()
    }

    /// Adds `f`; returns whether the rank grew.
    pub fn insert(&mut self, f: &Polynomial) -> bool {
        let v = self.reduce(self.vector(f));
        let Some(pivot) = v.iter().position(|&c| c != 0) else { return false };
        let inv = self.inverse(v[pivot]) as u64;
        let p = self.p as u64;
        let v: Vec<u32> = v.iter().map(|&c| ((c as u64 * inv) % p) as u32).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot] as u64;
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = ((*a as u64 + (p - c) * *b as u64) % p) as u32;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(self.vector(f)).iter().all(|&c| c == 0)
    }
}

/// The degree-`d` piece of the ideal generated by `gens`, spanned by all monomial multiples.
pub fn ideal_component(ring: &Ring, gens: &[Polynomial], d: u32) -> Span {
    let mut span = Span::new(ring, d);
    for g in gens {
        let Some(e) = ring.homogeneous_degree(g) else { continue };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(ring.weights(), d - e) {
            span.insert(&ring.mul(&ring.monomial(Monomial::from_exponents(&m)), g));
        }
    }
    span
}

/// Dimension of the degree-`d` component of `ring / <gens>`.
pub fn quotient_dim(ring: &Ring, gens: &[Polynomial], d: u32) -> usize {
    let span = ideal_component(ring, gens, d);
    span.ambient_dim() - span.rank()
}

/// Largest set of variables carrying no leading monomial, by exhaustive search.
pub fn independent_set_dimension(nvars: usize, leading: &[Monomial]) -> usize {
    let supports: Vec<u64> = leading.iter().map(|m| m.support_mask()).collect();
    (0u64..1 << nvars).filter(|s| supports.iter().all(|m| m & !s != 0)).map(|s| s.count_ones() as usize).max().unwrap_or(0)
}
