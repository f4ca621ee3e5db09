//! Explicit finite rings with enumerable carriers.
//!
//! Elements are opaque handles `Elem(u32)` indexing the carrier. Every ring
//! family in the DSL encodes its elements as mixed-radix digit vectors whose
//! addition is digitwise modular, so `(R, +)` is always presented as a direct
//! sum of cyclic groups `Z/r_0 + Z/r_1 + ...`. Multiplication is
//! structure-aware; rings with at most [`TABLE_LIMIT`] elements also cache
//! full operation tables.

pub(crate) mod gf;
pub mod literal;
pub mod spec;
pub mod subset;
pub mod twist;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
pub use spec::{parse_ring_spec, RingSpec};
pub use subset::AdditiveSubset;
pub use twist::{
    enumerate_automorphisms, inner_twist_derivation, twist_invariants, validate_twist,
    RingAutomorphism, TwistDerivation, TwistInvariants,
};

/// Largest carrier accepted anywhere.
pub const MAX_CARRIER: u128 = 1 << 16;
/// Rings up to this size keep full add/mul tables.
pub const TABLE_LIMIT: u32 = 256;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Unit,
    /// Impossible in a finite ring; kept so callers match exhaustively.
    NonZeroDivisorNonUnit,
    ZeroDivisor,
}

#[derive(Debug)]
pub enum RingKind {
    Zmod {
        n: u32,
    },
    Gf {
        p: u32,
        e: u32,
        modulus: Vec<u32>,
    },
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    GroupRing {
        base: Arc<FiniteRing>,
        orders: Vec<u32>,
        /// index of g + h for group elements encoded mixed-radix over `orders`
        group_add: Vec<u32>,
    },
    UpperTriangular(Arc<FiniteRing>),
    TruncPoly {
        base: Arc<FiniteRing>,
        k: u32,
    },
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

pub struct FiniteRing {
    spec: RingSpec,
    kind: RingKind,
    size: u32,
    radices: Vec<u32>,
    one: Elem,
    tables: Option<Tables>,
    commutative: bool,
    characteristic: u32,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.spec, self.size)
    }
}

type Blocks = SmallVec<[u32; 16]>;

fn split_blocks(mut h: u32, block: u32, count: usize) -> Blocks {
    let mut out = Blocks::new();
    for _ in 0..count {
        out.push(h % block);
        h /= block;
    }
    out
}

fn join_blocks(blocks: &[u32], block: u32) -> u32 {
    blocks.iter().rev().fold(0, |acc, &b| acc * block + b)
}

fn predicted_size(spec: &RingSpec) -> u128 {
    let pow = |b: u128, e: u128| -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc.saturating_mul(b);
            if acc > u64::MAX as u128 {
                return acc;
            }
        }
        acc
    };
    match spec {
        RingSpec::Zmod(n) => *n as u128,
        RingSpec::Gf { p, e, .. } => pow(*p as u128, *e as u128),
        RingSpec::Product(a, b) => predicted_size(a).saturating_mul(predicted_size(b)),
        RingSpec::GroupRing(b, orders) => {
            let g = orders
                .iter()
                .fold(1u128, |acc, &o| acc.saturating_mul(o as u128));
            pow(predicted_size(b), g.min(64))
        }
        RingSpec::UpperTriangular(b) => pow(predicted_size(b), 3),
        RingSpec::TruncPoly(b, k) => pow(predicted_size(b), (*k as u128).min(64)),
    }
}

/// Builds the ring described by `spec`, rejecting reducible GF moduli,
/// non-prime characteristics, degenerate parameters and carriers above 2^16.
pub fn construct_ring(spec: &RingSpec) -> Result<Arc<FiniteRing>> {
    let size = predicted_size(spec);
    if size > MAX_CARRIER {
        return Err(Error::TooLarge {
            size,
            limit: MAX_CARRIER,
        });
    }
    let kind = match spec {
        RingSpec::Zmod(n) => {
            if *n < 2 {
                return Err(Error::InvalidRing(format!(
                    "Zmod({n}): modulus must be at least 2"
                )));
            }
            RingKind::Zmod { n: *n }
        }
        RingSpec::Gf { p, e, modulus } => {
            if !gf::is_prime(*p) {
                return Err(Error::InvalidRing(format!("GF({p},{e}): {p} is not prime")));
            }
            if *e == 0 {
                return Err(Error::InvalidRing("GF degree must be positive".into()));
            }
            let modulus = match modulus {
                Some(m) => {
                    if m.len() != *e as usize + 1 || m.last() != Some(&1) {
                        return Err(Error::InvalidRing(format!(
                            "GF({p},{e}): modulus must be monic of degree {e}"
                        )));
                    }
                    if m.iter().any(|&c| c >= *p) {
                        return Err(Error::InvalidRing(format!(
                            "GF({p},{e}): modulus coefficient out of range"
                        )));
                    }
                    if !gf::is_irreducible(m, *p) {
                        return Err(Error::InvalidRing(format!(
                            "GF({p},{e}): modulus is reducible"
                        )));
                    }
                    m.clone()
                }
                None => gf::default_modulus(*p, *e)
                    .ok_or_else(|| Error::InvalidRing("no irreducible modulus".into()))?,
            };
            RingKind::Gf {
                p: *p,
                e: *e,
                modulus,
            }
        }
        RingSpec::Product(a, b) => RingKind::Product(construct_ring(a)?, construct_ring(b)?),
        RingSpec::GroupRing(b, orders) => {
            if orders.is_empty() || orders.contains(&0) {
                return Err(Error::InvalidRing("cyclic orders must be positive".into()));
            }
            let g: u32 = orders.iter().product();
            let mut group_add = vec![0u32; (g * g) as usize];
            for x in 0..g {
                for y in 0..g {
                    let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
                    for &o in orders {
                        out += ((a % o + b % o) % o) * place;
                        place *= o;
                        a /= o;
                        b /= o;
                    }
                    group_add[(x * g + y) as usize] = out;
                }
            }
            RingKind::GroupRing {
                base: construct_ring(b)?,
                orders: orders.clone(),
                group_add,
            }
        }
        RingSpec::UpperTriangular(b) => RingKind::UpperTriangular(construct_ring(b)?),
        RingSpec::TruncPoly(b, k) => {
            if *k == 0 {
                return Err(Error::InvalidRing("TruncPoly needs k >= 1".into()));
            }
            RingKind::TruncPoly {
                base: construct_ring(b)?,
                k: *k,
            }
        }
    };
    Ok(Arc::new(FiniteRing::from_kind(spec.clone(), kind)))
}

/// Parses and constructs in one step.
pub fn ring_from_str(text: &str) -> Result<Arc<FiniteRing>> {
    construct_ring(&parse_ring_spec(text)?)
}

impl FiniteRing {
    fn from_kind(spec: RingSpec, kind: RingKind) -> Self {
        let (radices, one) = match &kind {
            RingKind::Zmod { n } => (vec![*n], 1),
            RingKind::Gf { p, e, .. } => (vec![*p; *e as usize], 1),
            RingKind::Product(a, b) => {
                let mut r = a.radices.clone();
                r.extend_from_slice(&b.radices);
                (r, a.one.0 + a.size * b.one.0)
            }
            RingKind::GroupRing { base, orders, .. } => {
                let g: u32 = orders.iter().product();
                let r = (0..g).flat_map(|_| base.radices.iter().copied()).collect();
                (r, base.one.0)
            }
            RingKind::UpperTriangular(base) => {
                let r = (0..3).flat_map(|_| base.radices.iter().copied()).collect();
                (r, join_blocks(&[base.one.0, 0, base.one.0], base.size))
            }
            RingKind::TruncPoly { base, k } => {
                let r = (0..*k).flat_map(|_| base.radices.iter().copied()).collect();
                (r, base.one.0)
            }
        };
        let size = radices.iter().product();
        let mut ring = FiniteRing {
            spec,
            kind,
            size,
            radices,
            one: Elem(one),
            tables: None,
            commutative: false,
            characteristic: 0,
        };
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            let mut neg = vec![0; n];
            for a in 0..size {
                neg[a as usize] = ring.neg_raw(a);
                for b in 0..size {
                    add[a as usize * n + b as usize] = ring.add_raw(a, b);
                    mul[a as usize * n + b as usize] = ring.mul_raw(a, b);
                }
            }
            ring.tables = Some(Tables { add, mul, neg });
        }
        ring.characteristic = ring.additive_order(ring.one);
        ring.commutative = ring.compute_commutative();
        ring
    }

    fn compute_commutative(&self) -> bool {
        let gens = self.additive_generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem)
    }

    /// Radices of the additive digit decomposition.
    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// Elements with a single digit equal to one; they generate `(R, +)`.
    pub fn additive_generators(&self) -> Vec<Elem> {
        let mut place = 1;
        self.radices
            .iter()
            .map(|&r| {
                let g = Elem(place);
                place *= r;
                g
            })
            .collect()
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut h = a.0;
        self.radices
            .iter()
            .map(|&r| {
                let d = h % r;
                h /= r;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let mut h = 0;
        for (&d, &r) in digits.iter().zip(&self.radices).rev() {
            h = h * r + d % r;
        }
        Elem(h)
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if a.0 < self.size {
            Ok(a)
        } else {
            Err(Error::ForeignElement {
                handle: a.0,
                size: self.size,
            })
        }
    }

    fn add_raw(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        for &r in &self.radices {
            out += ((a % r + b % r) % r) * place;
            place *= r;
            a /= r;
            b /= r;
        }
        out
    }

    fn neg_raw(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        for &r in &self.radices {
            out += ((r - a % r) % r) * place;
            place *= r;
            a /= r;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            RingKind::Zmod { n } => (a as u64 * b as u64 % *n as u64) as u32,
            RingKind::Gf { p, e, modulus } => {
                let da = split_blocks(a, *p, *e as usize);
                let db = split_blocks(b, *p, *e as usize);
                let prod = gf::rem_monic(&gf::mul(&da, &db, *p), modulus, *p);
                join_blocks(&prod, *p)
            }
            RingKind::Product(r1, r2) => {
                let (a1, a2) = (a % r1.size, a / r1.size);
                let (b1, b2) = (b % r1.size, b / r1.size);
                r1.mul(Elem(a1), Elem(b1)).0 + r1.size * r2.mul(Elem(a2), Elem(b2)).0
            }
            RingKind::GroupRing {
                base,
                orders,
                group_add,
            } => {
                let g: u32 = orders.iter().product();
                let da = split_blocks(a, base.size, g as usize);
                let db = split_blocks(b, base.size, g as usize);
                let mut out: Blocks = smallvec::smallvec![0; g as usize];
                for (x, &ca) in da.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (y, &cb) in db.iter().enumerate() {
                        if cb == 0 {
                            continue;
                        }
                        let z = group_add[x * g as usize + y] as usize;
                        let term = base.mul(Elem(ca), Elem(cb));
                        out[z] = base.add(Elem(out[z]), term).0;
                    }
                }
                join_blocks(&out, base.size)
            }
            RingKind::UpperTriangular(base) => {
                let x = split_blocks(a, base.size, 3);
                let y = split_blocks(b, base.size, 3);
                let m = |u: u32, v: u32| base.mul(Elem(u), Elem(v));
                let d1 = m(x[0], y[0]);
                let off = base.add(m(x[0], y[1]), m(x[1], y[2]));
                let d2 = m(x[2], y[2]);
                join_blocks(&[d1.0, off.0, d2.0], base.size)
            }
            RingKind::TruncPoly { base, k } => {
                let k = *k as usize;
                let x = split_blocks(a, base.size, k);
                let y = split_blocks(b, base.size, k);
                let mut out: Blocks = smallvec::smallvec![0; k];
                for i in 0..k {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..k - i {
                        let term = base.mul(Elem(x[i]), Elem(y[j]));
                        out[i + j] = base.add(Elem(out[i + j]), term).0;
                    }
                }
                join_blocks(&out, base.size)
            }
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.index() * self.size as usize + b.index()]),
            None => Elem(self.add_raw(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.neg[a.index()]),
            None => Elem(self.neg_raw(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.index() * self.size as usize + b.index()]),
            None => Elem(self.mul_raw(a.0, b.0)),
        }
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// `k * a` for a signed integer `k`.
    pub fn scale(&self, k: i64, a: Elem) -> Elem {
        let mut acc = self.zero();
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, a);
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// The image of the integer `k` in the ring.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.characteristic as i64;
        self.scale(k.rem_euclid(c), self.one)
    }

    pub fn additive_order(&self, a: Elem) -> u32 {
        let mut h = a.0;
        let mut order = 1u32;
        for &r in &self.radices {
            let d = h % r;
            h /= r;
            let o = r / gcd(d, r);
            order = order / gcd(order, o) * o;
        }
        order
    }

    pub fn is_central(&self, a: Elem) -> bool {
        self.commutative
            || self
                .additive_generators()
                .into_iter()
                .all(|g| self.mul(a, g) == self.mul(g, a))
    }

    /// The center `{z : z a = a z for all a}` by a full commutation scan.
    pub fn center(&self) -> AdditiveSubset {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&z| self.elements().all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect();
        let center = AdditiveSubset::from_sorted(members);
        debug_assert!(center.is_subring(self));
        center
    }

    pub fn element_regularity(&self, a: Elem) -> Result<Regularity> {
        self.check(a)?;
        Ok(regularity(self, &a))
    }

    pub fn is_non_zero_divisor(&self, a: Elem) -> bool {
        regularity(self, &a) == Regularity::Unit
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        regularity(self, &a) == Regularity::Unit
    }

    /// Every nonzero element is a non-zero-divisor.
    pub fn is_domain(&self) -> bool {
        self.size > 1
            && self
                .elements()
                .skip(1)
                .all(|a| regularity(self, &a) != Regularity::ZeroDivisor)
    }

    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        Ok(literal::parse_element(self, text, 0)?)
    }

    pub fn format_element(&self, a: Elem) -> String {
        literal::format_element(self, a)
    }

    /// Checks the ring axioms: by full scan for carriers up to 512 elements,
    /// on 10^4 seeded random triples beyond.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let check = |a: Elem, b: Elem, c: Elem| -> std::result::Result<(), String> {
            let fmt = |x| self.format_element(x);
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(format!("addition not associative at {}", fmt(a)));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(format!(
                    "multiplication not associative at ({}, {}, {})",
                    fmt(a),
                    fmt(b),
                    fmt(c)
                ));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                || self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c))
            {
                return Err(format!(
                    "distributivity fails at ({}, {}, {})",
                    fmt(a),
                    fmt(b),
                    fmt(c)
                ));
            }
            Ok(())
        };
        for a in self.elements() {
            if self.add(a, self.zero()) != a || self.add(a, self.neg(a)) != self.zero() {
                return Err("additive identity or inverse fails".into());
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err("one is not a two-sided identity".into());
            }
        }
        if self.size <= 512 {
            for a in self.elements() {
                for b in self.elements() {
                    if self.add(a, b) != self.add(b, a) {
                        return Err("addition not commutative".into());
                    }
                    for c in self.elements() {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let a = Elem(rng.gen_range(0..self.size));
                let b = Elem(rng.gen_range(0..self.size));
                let c = Elem(rng.gen_range(0..self.size));
                if self.add(a, b) != self.add(b, a) {
                    return Err("addition not commutative".into());
                }
                check(a, b, c)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimal interface for exhaustive scans over a finite ring, shared by
/// coefficient rings and residue rings of skew polynomials.
pub trait FiniteScan {
    type Item: Clone + PartialEq;
    fn cardinality(&self) -> usize;
    fn nth_element(&self, i: usize) -> Self::Item;
    fn multiply(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
    fn is_zero(&self, a: &Self::Item) -> bool;
    fn is_one(&self, a: &Self::Item) -> bool;
}

impl FiniteScan for FiniteRing {
    type Item = Elem;
    fn cardinality(&self) -> usize {
        self.size as usize
    }
    fn nth_element(&self, i: usize) -> Elem {
        Elem(i as u32)
    }
    fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(*a, *b)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.0 == 0
    }
    fn is_one(&self, a: &Elem) -> bool {
        *a == self.one
    }
}

/// Unit / zero-divisor classification by scanning the carrier.
pub fn regularity<R: FiniteScan + ?Sized>(ring: &R, a: &R::Item) -> Regularity {
    if ring.is_zero(a) {
        return Regularity::ZeroDivisor;
    }
    let mut right_inverse = false;
    let mut left_inverse = false;
    for i in 0..ring.cardinality() {
        let b = ring.nth_element(i);
        let ab = ring.multiply(a, &b);
        let ba = ring.multiply(&b, a);
        if !ring.is_zero(&b) && (ring.is_zero(&ab) || ring.is_zero(&ba)) {
            return Regularity::ZeroDivisor;
        }
        right_inverse |= ring.is_one(&ab);
        left_inverse |= ring.is_one(&ba);
    }
    // left and right multiplication by a are injective, hence bijective
    assert!(
        right_inverse && left_inverse,
        "non-zero-divisor without inverse in a finite ring"
    );
    Regularity::Unit
}

/// Non-zero-divisor test that stops at the first annihilating element.
pub fn is_non_zero_divisor<R: FiniteScan + ?Sized>(ring: &R, a: &R::Item) -> bool {
    if ring.is_zero(a) {
        return false;
    }
    (0..ring.cardinality()).all(|i| {
        let b = ring.nth_element(i);
        ring.is_zero(&b)
            || !(ring.is_zero(&ring.multiply(a, &b)) || ring.is_zero(&ring.multiply(&b, a)))
    })
}

/// Two-sided inverse search.
pub fn find_inverse<R: FiniteScan + ?Sized>(ring: &R, a: &R::Item) -> Option<R::Item> {
    (0..ring.cardinality())
        .map(|i| ring.nth_element(i))
        .find(|b| ring.is_one(&ring.multiply(a, b)) && ring.is_one(&ring.multiply(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<FiniteRing> {
        ring_from_str(s).unwrap()
    }

    #[test]
    fn zmod6_basics() {
        let r = ring("Zmod(6)");
        assert_eq!(r.size(), 6);
        assert_eq!(r.characteristic(), 6);
        assert_eq!(r.element_regularity(Elem(5)).unwrap(), Regularity::Unit);
        assert_eq!(
            r.element_regularity(Elem(2)).unwrap(),
            Regularity::ZeroDivisor
        );
        assert_eq!(
            r.element_regularity(Elem(0)).unwrap(),
            Regularity::ZeroDivisor
        );
        assert!(r.element_regularity(Elem(6)).is_err());
        assert_eq!(r.center().len(), 6);
    }

    #[test]
    fn zmod7_is_a_field() {
        let r = ring("Zmod(7)");
        assert_eq!(r.element_regularity(Elem(3)).unwrap(), Regularity::Unit);
        assert!(r.is_domain());
        assert!(!ring("Zmod(4)").is_domain());
    }

    #[test]
    fn gf4_multiplication() {
        let r = ring("GF(2,2)");
        assert_eq!(r.size(), 4);
        let w = r.parse_element("01").unwrap();
        let w2 = r.mul(w, w);
        assert_eq!(w2, r.add(w, r.one()));
        assert_eq!(r.center().len(), 4);
        assert!(r.is_domain());
        assert_eq!(r.characteristic(), 2);
    }

    #[test]
    fn group_ring_z3_c2() {
        let r = ring("GroupRing(Zmod(3), Cyclic(2))");
        assert_eq!(r.size(), 9);
        assert!(r.is_commutative());
        let g = r.parse_element("[0,1]").unwrap();
        assert_eq!(r.mul(g, g), r.one());
        r.verify_axioms().unwrap();
    }

    #[test]
    fn ut2_is_noncommutative_with_scalar_center() {
        let r = ring("UT2(Zmod(2))");
        assert_eq!(r.size(), 8);
        assert!(!r.is_commutative());
        let c = r.center();
        let expected = [r.zero(), r.one()];
        assert_eq!(c.members(), &expected[..]);
        r.verify_axioms().unwrap();
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            ring_from_str("Zmod(1)"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            ring_from_str("GF(4,2)"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            ring_from_str("GF(2,2,101)"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            ring_from_str("TruncPoly(Zmod(16),5)"),
            Err(Error::TooLarge { .. })
        ));
        assert!(ring_from_str("GroupRing(Zmod(2), Cyclic(16))").is_ok());
    }

    #[test]
    fn axioms_hold_for_every_family() {
        for s in [
            "Zmod(12)",
            "GF(3,2)",
            "GF(2,3)",
            "Product(Zmod(3),Zmod(3))",
            "GroupRing(Zmod(2),Cyclic(2)xCyclic(2))",
            "TruncPoly(Zmod(2),3)",
            "TruncPoly(Zmod(3),2)",
            "UT2(Zmod(3))",
        ] {
            ring(s)
                .verify_axioms()
                .unwrap_or_else(|e| panic!("{s}: {e}"));
        }
        // beyond the table limit, structural arithmetic and sampling
        let big = ring("UT2(Zmod(9))");
        assert!(big.size() > TABLE_LIMIT);
        big.verify_axioms().unwrap();
    }

    #[test]
    fn table_and_structural_arithmetic_agree() {
        let r = ring("GroupRing(Zmod(3),Cyclic(6))");
        assert!(r.size() > TABLE_LIMIT);
        let small = ring("GroupRing(Zmod(3),Cyclic(2))");
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(small.mul(a, b).0, small.mul_raw(a.0, b.0));
            }
        }
        r.verify_axioms().unwrap();
    }
}
