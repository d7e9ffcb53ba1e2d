//! Buchberger's algorithm producing reduced, monic Gröbner bases.
//!
//! Pairs are managed with the Gebauer–Möller installation of Buchberger's
//! product and chain criteria and selected by smallest sugar degree, then by
//! smallest lcm under the ring order. For homogeneous input the sugar is the
//! true degree, which is the normal strategy, and stopping at a degree bound
//! yields a basis that is correct for every component up to that bound.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::field::Coeff;
use crate::ring::{Monomial, MonomialOrder, Polynomial, Ring, RingError, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("S-polynomial of a zero polynomial")]
    ZeroInput,
    #[error("degree cap {cap} exceeded: next pair has degree {degree}")]
    DegreeCapExceeded { cap: u32, degree: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Abort with [`GbError::DegreeCapExceeded`] instead of processing pairs above this degree.
    pub degree_cap: Option<u32>,
    /// Stop once every remaining pair lies above this degree. Only meaningful
    /// for homogeneous input under a degree-compatible order.
    pub truncate_above: Option<u32>,
}

impl GbOptions {
    pub fn with_degree_cap(cap: Option<u32>) -> GbOptions {
        GbOptions { degree_cap: cap, truncate_above: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_processed: usize,
    pub pairs_pruned: usize,
    pub reductions_to_zero: usize,
    pub max_intermediate_degree: u32,
    pub homogeneous_input: bool,
}

/// Reduced monic Gröbner basis, sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Polynomial>,
    stats: GbStats,
    truncated_at: Option<u32>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.polys == other.polys
    }
}

impl Eq for GroebnerBasis {}

struct Reducer<'a> {
    lm: &'a Monomial,
    mask: u64,
    lc_inv: Coeff,
    tail: &'a [Term],
}

impl<'a> Reducer<'a> {
    fn new(ring: &Ring, f: &'a Polynomial) -> Reducer<'a> {
        let lt = f.leading_term().expect("reducers are nonzero");
        Reducer { lm: &lt.mono, mask: lt.mono.support_mask(), lc_inv: ring.field().cinv(lt.coeff), tail: &f.terms()[1..] }
    }
}

/// Full reduction: repeatedly rewrites the largest reducible term using the
/// first reducer (in slice order) whose leading monomial divides it.
fn reduce_terms(ring: &Ring, f: Vec<Term>, reducers: &[Reducer<'_>]) -> Vec<Term> {
    let field = ring.field();
    let mut p = f;
    let mut start = 0;
    let mut out: Vec<Term> = Vec::new();
    while start < p.len() {
        let head = &p[start];
        let head_mask = head.mono.support_mask();
        let found = reducers.iter().find(|r| r.mask & !head_mask == 0 && r.lm.divides(&head.mono));
        match found {
            Some(r) => {
                let m = head.mono.div(r.lm);
                let c = field.cmul(head.coeff, r.lc_inv);
                p = ring.axpy(&p[start + 1..], field.cneg(c), Some(&m), r.tail);
                start = 0;
            }
            None => {
                out.push(head.clone());
                start += 1;
            }
        }
    }
    out
}

/// Normal form of `f` with respect to `basis`, reducing by the first eligible
/// element in the given order. `basis` elements must be nonzero.
pub fn normal_form(ring: &Ring, f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial, GbError> {
    ring.check(f)?;
    for g in basis {
        ring.check(g)?;
        if g.is_zero() {
            return Err(GbError::ZeroInput);
        }
    }
    let reducers: Vec<Reducer<'_>> = basis.iter().map(|g| Reducer::new(ring, g)).collect();
    Ok(Polynomial::from_sorted_terms(reduce_terms(ring, f.terms().to_vec(), &reducers)))
}

/// `(L/lt f) f - (L/lt g) g` with `L` the lcm of the leading monomials.
pub fn s_polynomial(ring: &Ring, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GbError> {
    ring.check(f)?;
    ring.check(g)?;
    let (ft, gt) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GbError::ZeroInput),
    };
    let l = ft.mono.lcm(&gt.mono);
    let field = ring.field();
    let a = ring.mul_term(field.cinv(ft.coeff), &l.div(&ft.mono), f);
    let b = ring.mul_term(field.cinv(gt.coeff), &l.div(&gt.mono), g);
    Ok(ring.sub(&a, &b))
}

struct Entry {
    poly: Polynomial,
    lm: Monomial,
    sugar: u32,
    active: bool,
}

#[derive(Clone)]
enum Task {
    Input(Polynomial),
    Pair(usize, usize),
}

struct Item {
    task: Task,
    key: Monomial,
    sugar: u32,
}

struct Engine<'a> {
    ring: &'a Ring,
    entries: Vec<Entry>,
    queue: Vec<Item>,
    stats: GbStats,
}

impl<'a> Engine<'a> {
    fn active_reducers(&self) -> Vec<Reducer<'_>> {
        self.entries.iter().filter(|e| e.active).map(|e| Reducer::new(self.ring, &e.poly)).collect()
    }

    fn select(&self) -> Option<usize> {
        let ring = self.ring;
        let rank = |it: &Item| match it.task {
            Task::Input(_) => (0usize, 0usize),
            Task::Pair(i, j) => (i + 1, j),
        };
        (0..self.queue.len()).min_by(|&a, &b| {
            let (x, y) = (&self.queue[a], &self.queue[b]);
            x.sugar.cmp(&y.sugar).then_with(|| ring.compare(&x.key, &y.key)).then_with(|| rank(x).cmp(&rank(y)))
        })
    }

    fn insert(&mut self, poly: Polynomial, sugar: u32) {
        let ring = self.ring;
        let poly = ring.monic(&poly);
        let lm = poly.leading_monomial().unwrap().clone();
        let h = self.entries.len();

        // Gebauer–Möller: new pairs (h, g), chain-pruned among themselves
        let cands: Vec<(usize, Monomial)> =
            self.entries.iter().enumerate().filter(|(_, e)| e.active).map(|(g, e)| (g, e.lm.lcm(&lm))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g1, l1)) in cands.iter().enumerate() {
            let coprime = self.entries[*g1].lm.is_coprime(&lm);
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l1)) || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        let before = cands.len();
        let new_pairs: Vec<(usize, Monomial)> = kept.into_iter().filter(|(g, _)| !self.entries[*g].lm.is_coprime(&lm)).collect();
        self.stats.pairs_pruned += before - new_pairs.len();

        // old pairs (g1, g2) made redundant by h
        let entries = &self.entries;
        let queue_before = self.queue.len();
        self.queue.retain(|it| match it.task {
            Task::Pair(g1, g2) => {
                let l = &it.key;
                !(lm.divides(l) && entries[g1].lm.lcm(&lm) != *l && entries[g2].lm.lcm(&lm) != *l)
            }
            Task::Input(_) => true,
        });
        self.stats.pairs_pruned += queue_before - self.queue.len();

        for e in self.entries.iter_mut() {
            if e.active && lm.divides(&e.lm) {
                e.active = false;
            }
        }
        for (g, l) in new_pairs {
            let eg = &self.entries[g];
            let s = (eg.sugar + ring.deg(&l.div(&eg.lm))).max(sugar + ring.deg(&l.div(&lm)));
            self.queue.push(Item { task: Task::Pair(g, h), key: l, sugar: s });
        }
        self.entries.push(Entry { poly, lm, sugar, active: true });
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Vec<Term> {
        let ring = self.ring;
        let (a, b) = (&self.entries[i], &self.entries[j]);
        let ma = lcm.div(&a.lm);
        let mb = lcm.div(&b.lm);
        let left: Vec<Term> = a.poly.terms()[1..].iter().map(|t| Term { coeff: t.coeff, mono: t.mono.mul(&ma) }).collect();
        ring.axpy(&left, ring.field().cneg(Coeff::ONE), Some(&mb), &b.poly.terms()[1..])
    }

    fn run(&mut self, opts: &GbOptions) -> Result<Option<u32>, GbError> {
        while let Some(idx) = self.select() {
            let sugar = self.queue[idx].sugar;
            if let Some(bound) = opts.truncate_above {
                if sugar > bound {
                    return Ok(Some(bound));
                }
            }
            if let Some(cap) = opts.degree_cap {
                if sugar > cap {
                    return Err(GbError::DegreeCapExceeded { cap, degree: sugar });
                }
            }
            let item = self.queue.swap_remove(idx);
            self.stats.max_intermediate_degree = self.stats.max_intermediate_degree.max(sugar);
            let terms = match &item.task {
                Task::Input(f) => f.terms().to_vec(),
                Task::Pair(i, j) => {
                    self.stats.pairs_processed += 1;
                    self.spoly(*i, *j, &item.key)
                }
            };
            let reduced = {
                let reducers = self.active_reducers();
                reduce_terms(self.ring, terms, &reducers)
            };
            if reduced.is_empty() {
                if matches!(item.task, Task::Pair(..)) {
                    self.stats.reductions_to_zero += 1;
                }
                continue;
            }
            let poly = Polynomial::from_sorted_terms(reduced);
            let sugar = sugar.max(self.ring.degree(&poly).unwrap_or(0));
            self.insert(poly, sugar);
        }
        Ok(None)
    }

    fn finish(self, truncated_at: Option<u32>) -> GroebnerBasis {
        let ring = self.ring;
        let mut active: Vec<Polynomial> = self.entries.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
        active.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let mut polys = Vec::with_capacity(active.len());
        for (i, g) in active.iter().enumerate() {
            let others: Vec<Reducer<'_>> =
                active.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, h)| Reducer::new(ring, h)).collect();
            let head = g.terms()[0].clone();
            let tail = reduce_terms(ring, g.terms()[1..].to_vec(), &others);
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push(head);
            terms.extend(tail);
            polys.push(ring.monic(&Polynomial::from_sorted_terms(terms)));
        }
        GroebnerBasis { ring: ring.clone(), polys, stats: self.stats, truncated_at }
    }
}

fn run_engine(ring: &Ring, seed: &[Polynomial], gens: &[Polynomial], opts: &GbOptions) -> Result<GroebnerBasis, GbError> {
    for g in seed.iter().chain(gens) {
        ring.check(g)?;
    }
    let homogeneous = gens.iter().all(|g| ring.is_homogeneous(g));
    let mut engine = Engine {
        ring,
        entries: Vec::new(),
        queue: Vec::new(),
        stats: GbStats { homogeneous_input: homogeneous, ..GbStats::default() },
    };
    for g in seed.iter().filter(|g| !g.is_zero()) {
        let g = ring.monic(g);
        let sugar = ring.degree(&g).unwrap();
        let lm = g.leading_monomial().unwrap().clone();
        engine.entries.push(Entry { poly: g, lm, sugar, active: true });
    }
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let key = g.leading_monomial().unwrap().clone();
        let sugar = ring.degree(g).unwrap();
        engine.queue.push(Item { task: Task::Input(g.clone()), key, sugar });
    }
    let truncated = engine.run(opts)?;
    Ok(engine.finish(truncated))
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ring`'s order.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], opts: &GbOptions) -> Result<GroebnerBasis, GbError> {
    run_engine(ring, &[], gens, opts)
}

/// Gröbner basis under the elimination order that puts the first
/// `eliminate_count` generators of `ring` in the eliminated block.
pub fn elimination_gb(
    ring: &Ring,
    gens: &[Polynomial],
    eliminate_count: usize,
    opts: &GbOptions,
) -> Result<GroebnerBasis, GbError> {
    let er = ring.with_order(MonomialOrder::elimination(ring.weights().to_vec(), eliminate_count));
    let gens: Vec<Polynomial> = gens.iter().map(|g| er.from_terms(g.terms().to_vec())).collect();
    buchberger(&er, &gens, opts)
}

impl GroebnerBasis {
    /// Basis of `self + <more>`, reusing `self` as already-processed input.
    pub fn extend(&self, more: &[Polynomial], opts: &GbOptions) -> Result<GroebnerBasis, GbError> {
        if self.truncated_at.is_some() {
            // a truncated basis cannot seed a complete computation
            let mut all = self.polys.clone();
            all.extend_from_slice(more);
            return run_engine(&self.ring, &[], &all, opts);
        }
        run_engine(&self.ring, &self.polys, more, opts)
    }

    /// Reinterprets an existing reduced basis (for example `t * G`) without recomputation.
    pub(crate) fn from_reduced(ring: Ring, polys: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis { ring, polys, stats: GbStats::default(), truncated_at: None }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().map(|p| p.leading_monomial().unwrap())
    }

    /// Normal form with respect to this basis; `f` must belong to the basis ring.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let reducers: Vec<Reducer<'_>> = self.polys.iter().map(|g| Reducer::new(&self.ring, g)).collect();
        Polynomial::from_sorted_terms(reduce_terms(&self.ring, f.terms().to_vec(), &reducers))
    }

    pub fn checked_normal_form(&self, f: &Polynomial) -> Result<Polynomial, GbError> {
        self.ring.check(f)?;
        Ok(self.normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|lm| lm.divides(m))
    }

    /// Elements not involving the first `count` generators.
    pub fn free_of_front(&self, count: usize) -> Vec<&Polynomial> {
        self.polys.iter().filter(|p| p.terms().iter().all(|t| t.mono.exponents()[..count].iter().all(|&e| e == 0))).collect()
    }

    /// One canonical polynomial per line after a header naming order and generators.
    pub fn dump(&self) -> String {
        let mut out = format!("# order {}, gens: {}\n", self.order().name(), self.ring.gens().names().join(","));
        for p in &self.polys {
            let _ = writeln!(out, "{}", self.ring.format(p));
        }
        out
    }

    /// Checks the Buchberger criterion directly: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let n = self.polys.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let s = s_polynomial(&self.ring, &self.polys[i], &self.polys[j]).expect("basis elements are nonzero");
                self.contains(&s)
            })
        })
    }

    /// Checks that the basis is reduced, monic, and sorted.
    pub fn is_reduced(&self) -> bool {
        let ring = &self.ring;
        let monic = self.polys.iter().all(|p| p.leading_coeff() == Some(Coeff::ONE));
        let sorted = self
            .polys
            .windows(2)
            .all(|w| ring.compare(w[0].leading_monomial().unwrap(), w[1].leading_monomial().unwrap()) == Ordering::Less);
        let reduced = self.polys.iter().enumerate().all(|(i, p)| {
            self.polys
                .iter()
                .enumerate()
                .all(|(j, g)| i == j || p.terms().iter().all(|t| !g.leading_monomial().unwrap().divides(&t.mono)))
        });
        monic && sorted && reduced
    }
}
