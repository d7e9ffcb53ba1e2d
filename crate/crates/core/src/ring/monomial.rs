use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 16]>;

/// Dense exponent vector, one entry per generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponents_mut(&mut self) -> &mut [u16] {
        &mut self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `sum exps[i] * weights[i]`.
    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    /// Bit `i` set iff generator `i` occurs (generators past 63 share the top bit).
    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1u64 << i.min(63)))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.div(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Inserts `count` zero exponents at the front.
    pub fn prepend_zeros(&self, count: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, count);
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }

    /// Drops the first `count` exponents.
    pub fn drop_front(&self, count: usize) -> Monomial {
        Monomial { exps: SmallVec::from_slice(&self.exps[count..]) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    WeightedDegRevLex,
    /// The first `block` generators are eliminated.
    EliminationBlock {
        block: usize,
    },
}

/// A monomial order over a fixed generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn weighted_degrevlex(weights: Vec<u32>) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::WeightedDegRevLex, weights }
    }

    pub fn elimination(weights: Vec<u32>, block: usize) -> MonomialOrder {
        assert!(block <= weights.len());
        if block == 0 {
            return MonomialOrder::weighted_degrevlex(weights);
        }
        MonomialOrder { kind: OrderKind::EliminationBlock { block }, weights }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::WeightedDegRevLex => "weighted-degrevlex",
            OrderKind::EliminationBlock { .. } => "elimination-block",
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self.kind, OrderKind::WeightedDegRevLex)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::WeightedDegRevLex => wdrl(&self.weights, ea, eb),
            OrderKind::EliminationBlock { block } => wdrl(&self.weights[..block], &ea[..block], &eb[..block])
                .then_with(|| wdrl(&self.weights[block..], &ea[block..], &eb[block..])),
        }
    }
}

/// Weighted degree first, then the reverse lexicographic tie-break: scanning
/// from the last generator, the larger exponent gives the smaller monomial.
#[inline]
fn wdrl(weights: &[u32], a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
    let db: u32 = b.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::WeightedDegRevLex => write!(f, "weighted-degrevlex"),
            OrderKind::EliminationBlock { block } => write!(f, "elimination-block({block})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revlex_tie_break() {
        // generators z,y,x,w,v with weights 1,1,1,2,2
        let order = MonomialOrder::weighted_degrevlex(vec![1, 1, 1, 2, 2]);
        let zv = Monomial::from_exponents(&[1, 0, 0, 0, 1]);
        let xw = Monomial::from_exponents(&[0, 0, 1, 1, 0]);
        assert_eq!(order.compare(&zv, &xw), Ordering::Less);
        let x = Monomial::var(5, 2);
        let w = Monomial::var(5, 3);
        assert_eq!(order.compare(&x, &w), Ordering::Less);
        assert_eq!(order.compare(&zv, &zv), Ordering::Equal);
    }

    #[test]
    fn elimination_block_puts_eliminated_variables_first() {
        let order = MonomialOrder::elimination(vec![1, 1, 1], 1);
        let t = Monomial::var(3, 0);
        let big = Monomial::from_exponents(&[0, 5, 5]);
        assert_eq!(order.compare(&t, &big), Ordering::Greater);
        let tx = Monomial::from_exponents(&[1, 1, 0]);
        let ty = Monomial::from_exponents(&[1, 0, 1]);
        assert_eq!(order.compare(&tx, &ty), Ordering::Greater);
    }

    #[test]
    fn lcm_gcd_divides() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 3, 1]);
        assert_eq!(a.gcd(&b).exponents(), &[1, 0, 0]);
        assert!(a.gcd(&b).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.checked_div(&b), None);
        assert!(!a.is_coprime(&b));
    }
}
