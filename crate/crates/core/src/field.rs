//! Finite fields `F_p` and `F_{p^r}`.
//!
//! Elements of `F_{p^r}` are residue vectors in the basis `1, @, @^2, ...`
//! where `@` is a root of the modulus. Inside polynomials the same element is
//! carried as a [`Coeff`], the base-`p` integer encoding of that vector, so
//! that term arithmetic can use lookup tables for small extension fields.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 97;

/// Extension fields up to this order get precomputed addition and
/// multiplication tables.
const TABLE_LIMIT: u64 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("characteristic {0} exceeds the supported maximum {MAX_PRIME}")]
    PrimeTooLarge(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{r} is too large")]
    TooLarge { p: u32, r: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("residue {value} out of range for characteristic {p}")]
    BadResidue { value: u32, p: u32 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed characteristic {source_p} degree {source_r} into characteristic {target_p}")]
    CharacteristicMismatch { source_p: u32, source_r: u32, target_p: u32 },
}

/// Encoded field element: `sum c_i p^i` for the residue vector `(c_0, ..., c_{r-1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coeff(pub u32);

impl Coeff {
    pub const ZERO: Coeff = Coeff(0);
    pub const ONE: Coeff = Coeff(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A field element as a residue vector, coordinate `i` being the coefficient of `@^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug)]
enum Arith {
    Prime { inv: Vec<u32> },
    Table { add: Vec<u16>, mul: Vec<u16>, neg: Vec<u16>, inv: Vec<u16> },
    Generic,
}

/// A validated finite field `F_{p^r}`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    /// `r + 1` coefficients, low degree first, monic. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    arith: Arc<Arith>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.describe())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers over F_p, coefficient vectors low degree first ----

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let factor = a[da] * lead_inv % p;
        let shift = da - db;
        for (i, &bc) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - factor * bc % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![0; rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let factor = rem[da] * lead_inv % p;
        let shift = da - db;
        quot[shift] = factor;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - factor * bc % p) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul_raw(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Monic polynomials of exact degree `d` over `F_p`, lexicographic with the
/// constant coefficient most significant.
fn monic_of_degree(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut k| {
        let mut v = vec![0u32; d as usize + 1];
        for i in (0..d as usize).rev() {
            v[i] = (k % p as u64) as u32;
            k /= p as u64;
        }
        v[d as usize] = 1;
        v
    })
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let r = modulus.len() as u32 - 1;
    if r <= 1 {
        return true;
    }
    (1..=r / 2).all(|d| monic_of_degree(p, d).all(|g| !poly_rem(modulus, &g, p).is_empty()))
}

fn format_at_poly(coeffs: &[u32], ascending: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut idx: Vec<usize> = (0..coeffs.len()).filter(|&i| coeffs[i] != 0).collect();
    if !ascending {
        idx.reverse();
    }
    for i in idx {
        let c = coeffs[i];
        let part = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "@".to_string(),
            (1, c) => format!("{c}*@"),
            (i, 1) => format!("@^{i}"),
            (i, c) => format!("{c}*@^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Parses a univariate polynomial in `@` with integer coefficients reduced mod `p`,
/// e.g. `1+@+@^2`. Returns coefficients low degree first, trimmed.
pub fn parse_at_poly(text: &str, p: u32) -> Result<Vec<u32>, String> {
    let mut coeffs: Vec<u32> = Vec::new();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut rest = cleaned.as_str();
    let mut sign_neg = false;
    if let Some(r) = rest.strip_prefix('-') {
        sign_neg = true;
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        let (c, e) = parse_at_term(term, p)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        let c = if sign_neg { (p - c) % p } else { c };
        coeffs[e] = (coeffs[e] + c) % p;
        if end == rest.len() {
            break;
        }
        sign_neg = rest.as_bytes()[end] == b'-';
        rest = &rest[end + 1..];
    }
    trim(&mut coeffs);
    Ok(coeffs)
}

fn parse_at_term(term: &str, p: u32) -> Result<(u32, usize), String> {
    let mut coeff: u64 = 1;
    let mut exp = 0usize;
    if term.is_empty() {
        return Err("empty term".into());
    }
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(format!("malformed term `{term}`"));
        }
        if let Some(pow) = factor.strip_prefix('@') {
            if pow.is_empty() {
                exp += 1;
            } else {
                let n = pow
                    .strip_prefix('^')
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| format!("malformed power `{factor}`"))?;
                exp += n;
            }
        } else {
            let n: u64 = factor.parse().map_err(|_| format!("malformed coefficient `{factor}`"))?;
            coeff = coeff * (n % p as u64) % p as u64;
        }
    }
    Ok((coeff as u32, exp))
}

impl FieldSpec {
    /// Builds `F_{p^r}`. Without a modulus the lexicographically smallest monic
    /// irreducible polynomial of degree `r` is chosen (coefficients compared
    /// constant term first).
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match (p as u64).checked_pow(r) {
            Some(q) if q <= u32::MAX as u64 => {}
            _ => return Err(FieldError::TooLarge { p, r }),
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                if let Some(&bad) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::BadResidue { value: bad, p });
                }
                trim(&mut m);
                if m.is_empty() || m.len() as u32 - 1 != r {
                    return Err(FieldError::DegreeMismatch { expected: r, found: m.len().saturating_sub(1) as u32 });
                }
                if *m.last().unwrap() != 1 {
                    return Err(FieldError::NotMonic);
                }
                if r == 1 {
                    // every linear polynomial is irreducible; elements are residues mod p
                    vec![0, 1]
                } else if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(format_at_poly(&m, true)));
                } else {
                    m
                }
            }
            None if r == 1 => vec![0, 1],
            None => monic_of_degree(p, r).find(|m| is_irreducible(m, p)).expect("irreducible polynomials exist in every degree"),
        };
        let mut spec = FieldSpec { p, r, modulus, arith: Arc::new(Arith::Generic) };
        spec.arith = Arc::new(spec.build_arith());
        Ok(spec)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FieldSpec, FieldError> {
        FieldSpec::new(p, 1, None)
    }

    fn build_arith(&self) -> Arith {
        let q = self.order();
        if self.r == 1 {
            let p = self.p;
            let inv = (0..p).map(|a| if a == 0 { 0 } else { inv_mod(a, p) }).collect();
            return Arith::Prime { inv };
        }
        if q > TABLE_LIMIT {
            return Arith::Generic;
        }
        let q = q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            let va = self.decode_vec(Coeff(a as u32));
            neg[a] = self.encode_vec(&va.iter().map(|&c| (self.p - c) % self.p).collect::<Vec<_>>()).0 as u16;
            if a != 0 {
                inv[a] = self.encode_vec(&self.inv_vec(&va)).0 as u16;
            }
            for b in 0..q {
                let vb = self.decode_vec(Coeff(b as u32));
                let s: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
                add[a * q + b] = self.encode_vec(&s).0 as u16;
                mul[a * q + b] = self.encode_vec(&self.mul_vec(&va, &vb)).0 as u16;
            }
        }
        Arith::Table { add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.r)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    /// `2`, `2^2`, or `2^2 mod 1+@+@^2` as used in `.gcr` files.
    pub fn describe(&self) -> String {
        if self.r == 1 {
            self.p.to_string()
        } else {
            format!("{}^{} mod {}", self.p, self.r, format_at_poly(&self.modulus, true))
        }
    }

    // ---- residue-vector layer ----

    fn decode_vec(&self, c: Coeff) -> Vec<u32> {
        let mut k = c.0;
        (0..self.r)
            .map(|_| {
                let d = k % self.p;
                k /= self.p;
                d
            })
            .collect()
    }

    fn encode_vec(&self, v: &[u32]) -> Coeff {
        Coeff(v.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    fn mul_vec(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let prod = poly_mul_raw(a, b, self.p);
        let mut rem = if prod.len() as u32 > self.r { poly_rem(&prod, &self.modulus, self.p) } else { prod };
        rem.resize(self.r as usize, 0);
        rem
    }

    fn inv_vec(&self, a: &[u32]) -> Vec<u32> {
        // extended Euclid on (a, modulus): track s with s*a = r (mod modulus)
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u32> = vec![];
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul_raw(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let scale = inv_mod(r0[0], p);
        let mut out: Vec<u32> = s0.iter().map(|&c| c * scale % p).collect();
        out = if out.len() as u32 > self.r { poly_rem(&out, &self.modulus, p) } else { out };
        out.resize(self.r as usize, 0);
        out
    }

    // ---- element API ----

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.r as usize {
            return Err(FieldError::FieldMismatch);
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::BadResidue { value: bad, p: self.p });
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.r as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_coeff(Coeff::ONE)
    }

    /// The class of `@`; for a prime field this is `0` (the placeholder modulus is `@`).
    pub fn primitive(&self) -> FieldElement {
        self.from_coeff(self.generator_coeff())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_coeff(self.coeff_from_int(n))
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.coeffs.len() != self.r as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            Err(FieldError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect() })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(FieldElement { coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect() })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement { coeffs: self.mul_vec(&a.coeffs, &b.coeffs) })
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement { coeffs: self.inv_vec(&a.coeffs) })
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.from_coeff(self.cpow(self.to_coeff(a), e)))
    }

    /// Pushes an element of the prime field `self` into `target`.
    pub fn embed(&self, a: &FieldElement, target: &FieldSpec) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if self.p != target.p || self.r != 1 {
            return Err(FieldError::CharacteristicMismatch { source_p: self.p, source_r: self.r, target_p: target.p });
        }
        let mut coeffs = vec![0; target.r as usize];
        coeffs[0] = a.coeffs[0];
        Ok(FieldElement { coeffs })
    }

    /// All field elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order() as u32).map(move |k| self.from_coeff(Coeff(k)))
    }

    pub fn to_coeff(&self, a: &FieldElement) -> Coeff {
        self.encode_vec(&a.coeffs)
    }

    pub fn from_coeff(&self, c: Coeff) -> FieldElement {
        FieldElement { coeffs: self.decode_vec(c) }
    }

    // ---- encoded layer used by polynomial arithmetic ----

    pub fn generator_coeff(&self) -> Coeff {
        if self.r == 1 {
            Coeff::ZERO
        } else {
            Coeff(self.p)
        }
    }

    pub fn coeff_from_int(&self, n: i64) -> Coeff {
        Coeff(n.rem_euclid(self.p as i64) as u32)
    }

    /// `Some(n)` when `c` lies in the prime subfield.
    pub fn as_prime_residue(&self, c: Coeff) -> Option<u32> {
        (c.0 < self.p).then_some(c.0)
    }

    #[inline]
    pub fn cadd(&self, a: Coeff, b: Coeff) -> Coeff {
        match &*self.arith {
            Arith::Prime { .. } => {
                let s = a.0 + b.0;
                Coeff(if s >= self.p { s - self.p } else { s })
            }
            Arith::Table { add, .. } => Coeff(add[(a.0 as usize) * self.order() as usize + b.0 as usize] as u32),
            Arith::Generic => {
                let (va, vb) = (self.decode_vec(a), self.decode_vec(b));
                self.encode_vec(&va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>())
            }
        }
    }

    #[inline]
    pub fn cneg(&self, a: Coeff) -> Coeff {
        match &*self.arith {
            Arith::Prime { .. } => Coeff(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Arith::Table { neg, .. } => Coeff(neg[a.0 as usize] as u32),
            Arith::Generic => self.encode_vec(&self.decode_vec(a).iter().map(|&x| (self.p - x) % self.p).collect::<Vec<_>>()),
        }
    }

    #[inline]
    pub fn csub(&self, a: Coeff, b: Coeff) -> Coeff {
        self.cadd(a, self.cneg(b))
    }

    #[inline]
    pub fn cmul(&self, a: Coeff, b: Coeff) -> Coeff {
        match &*self.arith {
            Arith::Prime { .. } => Coeff(a.0 * b.0 % self.p),
            Arith::Table { mul, .. } => Coeff(mul[(a.0 as usize) * self.order() as usize + b.0 as usize] as u32),
            Arith::Generic => self.encode_vec(&self.mul_vec(&self.decode_vec(a), &self.decode_vec(b))),
        }
    }

    /// Inverse of a nonzero encoded element.
    #[inline]
    pub fn cinv(&self, a: Coeff) -> Coeff {
        debug_assert!(!a.is_zero());
        match &*self.arith {
            Arith::Prime { inv } => Coeff(inv[a.0 as usize]),
            Arith::Table { inv, .. } => Coeff(inv[a.0 as usize] as u32),
            Arith::Generic => self.encode_vec(&self.inv_vec(&self.decode_vec(a))),
        }
    }

    pub fn cpow(&self, a: Coeff, mut e: u64) -> Coeff {
        let mut result = Coeff::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.cmul(result, base);
            }
            base = self.cmul(base, base);
            e >>= 1;
        }
        result
    }

    /// Field literal: an integer for prime-subfield elements, otherwise a
    /// polynomial in `@`, highest power first.
    pub fn format_coeff(&self, c: Coeff) -> String {
        match self.as_prime_residue(c) {
            Some(n) => n.to_string(),
            None => format_at_poly(&self.decode_vec(c), false),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.r)
        }
    }
}
