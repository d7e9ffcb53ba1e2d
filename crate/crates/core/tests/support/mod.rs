//! Property checks shared by the property tests and the acceptance run.
//! Each returns a one-line summary on success and the first counterexample
//! on failure. Random instances come from a fixed-seed runner.

#![allow(dead_code)]

use gcrs_core::field::{Coeff, FieldSpec};
use gcrs_core::graded::standard_monomials_of;
use gcrs_core::regseq::{is_regular, ColonTest, HilbertSeriesTest, Verdict};
use gcrs_core::{buchberger, GbOptions, GeneratorSet, Ideal, Polynomial, QuotientRing, Ring, Term};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type Check = Result<String, String>;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// All fields with at most 16 elements.
pub fn small_fields() -> Vec<FieldSpec> {
    [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]
        .into_iter()
        .map(|(p, r)| FieldSpec::new(p, r, None).unwrap())
        .collect()
}

pub fn field_axioms_exhaustive() -> Check {
    let mut triples = 0u64;
    for k in small_fields() {
        let els: Vec<_> = k.elements().collect();
        let zero = k.zero();
        let one = k.one();
        for a in &els {
            let ok = k.add(a, &zero).unwrap() == *a
                && k.mul(a, &one).unwrap() == *a
                && k.add(a, &k.neg(a).unwrap()).unwrap() == zero
                && (a.is_zero() || k.mul(a, &k.inv(a).unwrap()).unwrap() == one);
            if !ok {
                return Err(format!("identity/inverse failure for {a:?} in {k}"));
            }
            for b in &els {
                if k.add(a, b).unwrap() != k.add(b, a).unwrap() || k.mul(a, b).unwrap() != k.mul(b, a).unwrap() {
                    return Err(format!("commutativity failure for {a:?}, {b:?} in {k}"));
                }
                for c in &els {
                    triples += 1;
                    let assoc_add = k.add(&k.add(a, b).unwrap(), c).unwrap() == k.add(a, &k.add(b, c).unwrap()).unwrap();
                    let assoc_mul = k.mul(&k.mul(a, b).unwrap(), c).unwrap() == k.mul(a, &k.mul(b, c).unwrap()).unwrap();
                    let distrib =
                        k.mul(a, &k.add(b, c).unwrap()).unwrap() == k.add(&k.mul(a, b).unwrap(), &k.mul(a, c).unwrap()).unwrap();
                    if !(assoc_add && assoc_mul && distrib) {
                        return Err(format!("ring axiom failure for {a:?}, {b:?}, {c:?} in {k}"));
                    }
                }
            }
        }
    }
    Ok(format!("{} fields of order <= 16, {triples} triples", small_fields().len()))
}

pub fn frobenius() -> Check {
    let mut count = 0u64;
    let mut fields = small_fields();
    fields.push(FieldSpec::new(3, 7, None).unwrap());
    fields.push(FieldSpec::new(2, 8, None).unwrap());
    for k in &fields {
        let p = k.characteristic() as u64;
        let q = k.order();
        let step = (q / 64).max(1) as usize;
        let els: Vec<_> = k.elements().step_by(step).collect();
        for a in &els {
            if k.pow(a, q).unwrap() != *a {
                return Err(format!("a^q != a for {a:?} in {k}"));
            }
            for b in &els {
                count += 1;
                let lhs = k.pow(&k.add(a, b).unwrap(), p).unwrap();
                let rhs = k.add(&k.pow(a, p).unwrap(), &k.pow(b, p).unwrap()).unwrap();
                if lhs != rhs {
                    return Err(format!("(a+b)^p != a^p + b^p for {a:?}, {b:?} in {k}"));
                }
            }
        }
    }
    Ok(format!("{count} pairs over {} fields", fields.len()))
}

/// Sparse description of a homogeneous polynomial: `(monomial index, coefficient)`.
pub type PolySeed = Vec<(u16, u32)>;

#[derive(Clone, Debug)]
pub struct Instance {
    pub field: usize,
    pub weights: Vec<u32>,
    pub relations: Vec<(u32, PolySeed)>,
    pub f: (u32, PolySeed),
    pub g: PolySeed,
    pub h: (u32, PolySeed),
    pub scalar: u32,
}

fn poly_seed() -> impl Strategy<Value = PolySeed> {
    prop::collection::vec((any::<u16>(), any::<u32>()), 1..5)
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (
        0..3usize,
        prop::collection::vec(prop_oneof![3 => Just(1u32), 1 => Just(2u32)], 2..=5),
        prop::collection::vec((2u32..=3, poly_seed()), 1..=5),
        (1u32..=4, poly_seed()),
        poly_seed(),
        (1u32..=2, poly_seed()),
        any::<u32>(),
    )
        .prop_map(|(field, weights, relations, f, g, h, scalar)| Instance { field, weights, relations, f, g, h, scalar })
}

pub struct Built {
    pub ring: Ring,
    pub relations: Vec<Polynomial>,
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub scalar: Coeff,
}

pub fn fields_for_instances() -> [FieldSpec; 3] {
    [FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap(), FieldSpec::new(2, 2, None).unwrap()]
}

pub fn ring_with(field: FieldSpec, weights: &[u32]) -> Ring {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let pairs: Vec<(&str, u32)> = weights.iter().enumerate().map(|(i, &w)| (names[i], w)).collect();
    Ring::new(field, GeneratorSet::from_pairs(&pairs).unwrap())
}

/// All monomials of degree `d`, descending.
pub fn monomials(ring: &Ring, d: u32) -> Vec<gcrs_core::Monomial> {
    let empty = buchberger(ring, &[], &GbOptions::default()).unwrap();
    standard_monomials_of(&empty, d)
}

pub fn build_poly(ring: &Ring, d: u32, seed: &PolySeed) -> Polynomial {
    let monos = monomials(ring, d);
    if monos.is_empty() {
        return ring.zero();
    }
    let q = ring.field().order() as u32;
    let terms = seed.iter().map(|&(i, c)| Term { coeff: Coeff(c % q), mono: monos[i as usize % monos.len()].clone() }).collect();
    ring.from_terms(terms)
}

pub fn build(inst: &Instance) -> Built {
    let ring = ring_with(fields_for_instances()[inst.field].clone(), &inst.weights);
    let relations = inst.relations.iter().map(|(d, s)| build_poly(&ring, *d, s)).collect();
    let f = build_poly(&ring, inst.f.0, &inst.f.1);
    let g = build_poly(&ring, inst.f.0, &inst.g);
    let h = build_poly(&ring, inst.h.0, &inst.h.1);
    let q = ring.field().order() as u32;
    let scalar = Coeff(1 + inst.scalar % (q - 1));
    Built { ring, relations, f, g, h, scalar }
}

pub fn normal_form_properties(cases: u32) -> Check {
    let mut r = runner(cases);
    r.run(&instance(), |inst| {
        let b = build(&inst);
        let ring = &b.ring;
        let gb = buchberger(ring, &b.relations, &GbOptions::default()).unwrap();
        let nf_f = gb.normal_form(&b.f);
        let nf_g = gb.normal_form(&b.g);
        prop_assert_eq!(gb.normal_form(&nf_f), nf_f.clone(), "idempotence");
        let combo = ring.add(&b.f, &ring.scale(b.scalar, &b.g));
        let expected = ring.add(&nf_f, &ring.scale(b.scalar, &nf_g));
        prop_assert_eq!(gb.normal_form(&combo), expected, "linearity");
        prop_assert!(gb.contains(&ring.sub(&b.f, &nf_f)), "f - NF(f) in I");
        prop_assert!(nf_f.terms().iter().all(|t| gb.is_standard(&t.mono)), "NF is standard");
        prop_assert!(b.relations.iter().all(|rel| gb.contains(rel)), "relations reduce to zero");
        prop_assert!(gb.verify_s_pairs() && gb.is_reduced(), "reduced Groebner basis");
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random homogeneous instances"))
}

pub fn gb_canonicity(cases: u32) -> Check {
    let mut r = runner(cases);
    r.run(&(instance(), any::<u64>()), |(inst, shuffle)| {
        let b = build(&inst);
        let ring = &b.ring;
        let opts = GbOptions::default();
        let base = buchberger(ring, &b.relations, &opts).unwrap();
        let mut other: Vec<Polynomial> = b.relations.iter().map(|p| ring.scale(b.scalar, p)).collect();
        let n = other.len();
        if n > 1 {
            other.rotate_left((shuffle as usize) % n);
            other.swap(0, (shuffle as usize / 7) % n);
            // a redundant combination of two inputs
            let extra = ring.add(&other[0], &other[1]);
            if ring.is_homogeneous(&extra) {
                other.push(extra);
            }
        }
        let again = buchberger(ring, &other, &opts).unwrap();
        prop_assert_eq!(base.polys(), again.polys());
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} permuted and rescaled inputs"))
}

pub fn colon_intersection_identities(cases: u32) -> Check {
    let mut r = runner(cases);
    r.run(&instance(), |inst| {
        let b = build(&inst);
        let ring = &b.ring;
        let opts = GbOptions::default();
        let i = Ideal::new(ring, b.relations.clone(), &opts).unwrap();
        let j = Ideal::new(ring, vec![b.f.clone(), b.h.clone()], &opts).unwrap();
        let k = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&k).unwrap() && j.contains_ideal(&k).unwrap(), "K in I and J");
        for x in i.gens() {
            for y in j.gens() {
                prop_assert!(k.contains(&ring.mul(x, y)).unwrap(), "IJ in K");
            }
        }
        if !b.f.is_zero() {
            let c = i.colon(&b.f).unwrap();
            for g in c.gens() {
                prop_assert!(i.contains(&ring.mul(g, &b.f)).unwrap(), "g f in I");
            }
            prop_assert!(c.contains_ideal(&i).unwrap(), "I in (I : f)");
            if !b.h.is_zero() {
                let ch = i.colon(&ring.mul(&b.f, &b.h)).unwrap();
                prop_assert!(ch.contains_ideal(&c).unwrap(), "(I : f) in (I : fh)");
            }
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random ideal pairs"))
}

fn quotient_of(b: &Built) -> QuotientRing {
    QuotientRing::new(&b.ring, b.relations.clone(), &GbOptions::default()).unwrap()
}

pub fn scalar_invariance(cases: u32) -> Check {
    let mut r = runner(cases);
    r.run(&instance(), |inst| {
        let b = build(&inst);
        if b.f.is_zero() {
            return Ok(());
        }
        let q = quotient_of(&b);
        let base = is_regular(&q, &b.f, &HilbertSeriesTest).unwrap().is_regular();
        for c in 1..q.ring().field().order() as u32 {
            let scaled = q.ring().scale(Coeff(c), &b.f);
            prop_assert_eq!(is_regular(&q, &scaled, &HilbertSeriesTest).unwrap().is_regular(), base);
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random elements, all nonzero scalars"))
}

pub fn strategy_agreement(cases: u32) -> Check {
    let mut r = runner(cases);
    r.run(&instance(), |inst| {
        let b = build(&inst);
        if b.f.is_zero() {
            return Ok(());
        }
        let q = quotient_of(&b);
        let a = is_regular(&q, &b.f, &ColonTest).unwrap();
        let h = is_regular(&q, &b.f, &HilbertSeriesTest).unwrap();
        prop_assert_eq!(&a, &h);
        if let Verdict::ZeroDivisor { witness } = &a {
            prop_assert!(!q.is_zero(witness) && q.is_zero(&q.ring().mul(witness, &b.f)), "witness soundness");
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random elements, colon and hilbert agree"))
}
