//! Ring automorphisms and twisted (rho-) derivations of a finite ring.
//!
//! A rho-derivation is an additive `D` with `D(ab) = D(a) rho(b) + a D(b)`.
//! Both kinds of map are stored as full image tables over the carrier.

use std::sync::Arc;

use super::{AdditiveSubset, Elem, FiniteRing, RingKind};
use crate::error::{Error, Result, TwistError};

#[derive(Debug, Clone)]
pub struct RingAutomorphism {
    ring: Arc<FiniteRing>,
    images: Vec<Elem>,
    inverse: Vec<Elem>,
    order: u32,
}

impl PartialEq for RingAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.images == other.images
    }
}

impl RingAutomorphism {
    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        let images: Vec<Elem> = ring.elements().collect();
        RingAutomorphism {
            ring: ring.clone(),
            inverse: images.clone(),
            images,
            order: 1,
        }
    }

    /// `a -> a^p` on `GF(p,e)`.
    pub fn frobenius(ring: &Arc<FiniteRing>) -> Result<Self> {
        let p = match ring.kind() {
            RingKind::Gf { p, .. } => *p,
            _ => {
                return Err(TwistError::Unsupported(format!(
                    "frobenius is only defined for GF rings, not {}",
                    ring.spec()
                ))
                .into())
            }
        };
        let table = ring.elements().map(|a| ring.pow(a, p)).collect();
        Ok(validate_automorphism(ring, table)?)
    }

    /// `(a, b) -> (b, a)` on a product of two equal factors.
    pub fn swap(ring: &Arc<FiniteRing>) -> Result<Self> {
        let (a, b) = match ring.kind() {
            RingKind::Product(a, b) if a.spec() == b.spec() => (a, b),
            _ => {
                return Err(TwistError::Unsupported(format!(
                    "swap needs a product of two equal factors, not {}",
                    ring.spec()
                ))
                .into())
            }
        };
        let _ = b;
        let s = a.size();
        let table = ring
            .elements()
            .map(|x| Elem(x.0 / s + s * (x.0 % s)))
            .collect();
        Ok(validate_automorphism(ring, table)?)
    }

    /// Extends images of the additive generators additively.
    pub fn from_generator_images(ring: &Arc<FiniteRing>, images: &[Elem]) -> Result<Self> {
        let table = extend_additively(ring, images)?;
        Ok(validate_automorphism(ring, table)?)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a.index()]
    }

    #[inline]
    pub fn apply_inverse(&self, a: Elem) -> Elem {
        self.inverse[a.index()]
    }

    /// `rho^k(a)`.
    pub fn apply_pow(&self, a: Elem, k: u32) -> Elem {
        (0..k % self.order).fold(a, |x, _| self.apply(x))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn table(&self) -> &[Elem] {
        &self.images
    }
}

#[derive(Debug, Clone)]
pub struct TwistDerivation {
    companion: RingAutomorphism,
    images: Vec<Elem>,
}

impl TwistDerivation {
    pub fn zero(rho: &RingAutomorphism) -> Self {
        TwistDerivation {
            companion: rho.clone(),
            images: vec![Elem(0); rho.ring.size() as usize],
        }
    }

    /// `u * d/dt` on `TruncPoly(base, k)`: `D(sum c_i t^i) = (sum i c_i t^(i-1)) u`,
    /// a derivation (with identity companion) only when `k t^(k-1) u = 0`.
    pub fn derivative(ring: &Arc<FiniteRing>, u: Elem) -> Result<Self> {
        let (base, k) = match ring.kind() {
            RingKind::TruncPoly { base, k } => (base, *k as usize),
            _ => {
                return Err(TwistError::Unsupported(format!(
                    "d/dt is only defined for TruncPoly rings, not {}",
                    ring.spec()
                ))
                .into())
            }
        };
        ring.check(u)?;
        let bs = base.size();
        let table = ring
            .elements()
            .map(|a| {
                let coeffs = super::split_blocks(a.0, bs, k);
                let mut out = vec![0u32; k];
                for i in 1..k {
                    out[i - 1] = base.scale(i as i64, Elem(coeffs[i])).0;
                }
                ring.mul(Elem(super::join_blocks(&out, bs)), u)
            })
            .collect();
        let rho = RingAutomorphism::identity(ring);
        Ok(validate_derivation(&rho, table)?)
    }

    pub fn from_generator_images(rho: &RingAutomorphism, images: &[Elem]) -> Result<Self> {
        let table = extend_additively(&rho.ring, images)?;
        Ok(validate_derivation(rho, table)?)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.companion.ring
    }

    pub fn companion(&self) -> &RingAutomorphism {
        &self.companion
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a.index()]
    }

    /// `D^k(a)`.
    pub fn apply_pow(&self, a: Elem, k: u32) -> Elem {
        let mut x = a;
        for _ in 0..k {
            if x.0 == 0 {
                break;
            }
            x = self.apply(x);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|e| e.0 == 0)
    }

    pub fn table(&self) -> &[Elem] {
        &self.images
    }
}

fn extend_additively(ring: &FiniteRing, images: &[Elem]) -> Result<Vec<Elem>> {
    let gens = ring.additive_generators();
    if images.len() != gens.len() {
        return Err(Error::Precondition(format!(
            "expected images of {} additive generators, got {}",
            gens.len(),
            images.len()
        )));
    }
    for &img in images {
        ring.check(img)?;
    }
    Ok(ring
        .elements()
        .map(|a| {
            ring.digits(a)
                .iter()
                .zip(images)
                .fold(ring.zero(), |acc, (&d, &img)| {
                    ring.add(acc, ring.scale(d as i64, img))
                })
        })
        .collect())
}

/// `phi(h + g) = phi(h) + phi(g)` for every `h` and additive generator `g`
/// forces additivity on the whole group.
fn additivity_witness(ring: &FiniteRing, table: &[Elem]) -> Option<String> {
    if table[0] != ring.zero() {
        return Some("zero is not fixed".into());
    }
    for g in ring.additive_generators() {
        for h in ring.elements() {
            let lhs = table[ring.add(h, g).index()];
            let rhs = ring.add(table[h.index()], table[g.index()]);
            if lhs != rhs {
                return Some(format!(
                    "phi({} + {}) != phi({}) + phi({})",
                    ring.format_element(h),
                    ring.format_element(g),
                    ring.format_element(h),
                    ring.format_element(g)
                ));
            }
        }
    }
    None
}

fn validate_automorphism(
    ring: &Arc<FiniteRing>,
    table: Vec<Elem>,
) -> std::result::Result<RingAutomorphism, TwistError> {
    let n = ring.size() as usize;
    if table.len() != n {
        return Err(TwistError::TableSize {
            expected: n,
            found: table.len(),
        });
    }
    if table.iter().any(|e| e.0 >= ring.size()) {
        return Err(TwistError::NotBijective);
    }
    if let Some(w) = additivity_witness(ring, &table) {
        return Err(TwistError::NotAdditive(w));
    }
    // multiplicativity is bi-additive, so generator pairs suffice
    let gens = ring.additive_generators();
    for &a in &gens {
        for &b in &gens {
            if table[ring.mul(a, b).index()] != ring.mul(table[a.index()], table[b.index()]) {
                return Err(TwistError::NotMultiplicative(format!(
                    "phi({} * {}) != phi({}) * phi({})",
                    ring.format_element(a),
                    ring.format_element(b),
                    ring.format_element(a),
                    ring.format_element(b)
                )));
            }
        }
    }
    if table[ring.one().index()] != ring.one() {
        return Err(TwistError::DoesNotFixOne);
    }
    let mut inverse = vec![Elem(u32::MAX); n];
    for (a, &img) in table.iter().enumerate() {
        if inverse[img.index()].0 != u32::MAX {
            return Err(TwistError::NotBijective);
        }
        inverse[img.index()] = Elem(a as u32);
    }
    let mut order = 1;
    let mut power = table.clone();
    while power.iter().enumerate().any(|(i, e)| e.index() != i) {
        power = power.iter().map(|e| table[e.index()]).collect();
        order += 1;
    }
    Ok(RingAutomorphism {
        ring: ring.clone(),
        images: table,
        inverse,
        order,
    })
}

fn validate_derivation(
    rho: &RingAutomorphism,
    table: Vec<Elem>,
) -> std::result::Result<TwistDerivation, TwistError> {
    let ring = &rho.ring;
    let n = ring.size() as usize;
    if table.len() != n {
        return Err(TwistError::TableSize {
            expected: n,
            found: table.len(),
        });
    }
    if table.iter().any(|e| e.0 >= ring.size()) {
        return Err(TwistError::DerivationNotAdditive(
            "image outside the ring".into(),
        ));
    }
    if let Some(w) = additivity_witness(ring, &table) {
        return Err(TwistError::DerivationNotAdditive(w));
    }
    if table[ring.one().index()] != ring.zero() {
        return Err(TwistError::DerivationOfOne);
    }
    // D(ab) - D(a)rho(b) - aD(b) is bi-additive once D and rho are additive
    let gens = ring.additive_generators();
    for &a in &gens {
        for &b in &gens {
            let lhs = table[ring.mul(a, b).index()];
            let rhs = ring.add(
                ring.mul(table[a.index()], rho.apply(b)),
                ring.mul(a, table[b.index()]),
            );
            if lhs != rhs {
                return Err(TwistError::Leibniz(format!(
                    "D({} * {}) = {} but D(a)rho(b) + aD(b) = {}",
                    ring.format_element(a),
                    ring.format_element(b),
                    ring.format_element(lhs),
                    ring.format_element(rhs)
                )));
            }
        }
    }
    Ok(TwistDerivation {
        companion: rho.clone(),
        images: table,
    })
}

/// Validates a pair of tables as an automorphism and a rho-derivation.
pub fn validate_twist(
    ring: &Arc<FiniteRing>,
    rho: Vec<Elem>,
    d: Vec<Elem>,
) -> std::result::Result<(RingAutomorphism, TwistDerivation), TwistError> {
    let rho = validate_automorphism(ring, rho)?;
    let d = validate_derivation(&rho, d)?;
    Ok((rho, d))
}

/// `D(a) = m rho(a) - a m`.
pub fn inner_twist_derivation(m: Elem, rho: &RingAutomorphism) -> TwistDerivation {
    let ring = &rho.ring;
    let table = ring
        .elements()
        .map(|a| ring.sub(ring.mul(m, rho.apply(a)), ring.mul(a, m)))
        .collect();
    validate_derivation(rho, table).expect("inner rho-derivations satisfy the Leibniz rule")
}

/// Every unital automorphism, found by backtracking over images of the
/// additive generators. Images must keep additive order and centrality, and
/// products are checked as soon as both factors and their product's support
/// are assigned.
pub fn enumerate_automorphisms(ring: &Arc<FiniteRing>) -> Result<Vec<RingAutomorphism>> {
    if ring.size() > 256 {
        return Err(Error::TooLarge {
            size: ring.size() as u128,
            limit: 256,
        });
    }
    let gens = ring.additive_generators();
    let k = gens.len();
    let orders: Vec<u32> = gens.iter().map(|&g| ring.additive_order(g)).collect();
    let central: Vec<bool> = gens.iter().map(|&g| ring.is_central(g)).collect();
    let candidates: Vec<Vec<Elem>> = (0..k)
        .map(|c| {
            ring.elements()
                .filter(|&y| {
                    ring.additive_order(y) == orders[c] && ring.is_central(y) == central[c]
                })
                .collect()
        })
        .collect();
    let support = |a: Elem| -> usize {
        ring.digits(a)
            .iter()
            .rposition(|&d| d != 0)
            .map_or(0, |i| i + 1)
    };
    let products: Vec<Vec<(Vec<u32>, usize)>> = gens
        .iter()
        .map(|&a| {
            gens.iter()
                .map(|&b| {
                    let p = ring.mul(a, b);
                    (ring.digits(p), support(p))
                })
                .collect()
        })
        .collect();
    let one_digits = ring.digits(ring.one());
    let one_support = support(ring.one());

    let combine = |digits: &[u32], assigned: &[Elem]| -> Elem {
        digits
            .iter()
            .zip(assigned)
            .fold(ring.zero(), |acc, (&d, &img)| {
                ring.add(acc, ring.scale(d as i64, img))
            })
    };

    let mut found = Vec::new();
    let mut assigned: Vec<Elem> = Vec::with_capacity(k);
    fn search(
        level: usize,
        assigned: &mut Vec<Elem>,
        found: &mut Vec<Vec<Elem>>,
        ctx: &dyn Fn(usize, &[Elem]) -> bool,
        candidates: &[Vec<Elem>],
    ) {
        if level == candidates.len() {
            found.push(assigned.clone());
            return;
        }
        for &y in &candidates[level] {
            assigned.push(y);
            if ctx(level, assigned) {
                search(level + 1, assigned, found, ctx, candidates);
            }
            assigned.pop();
        }
    }
    let consistent = |level: usize, assigned: &[Elem]| -> bool {
        let n = level + 1;
        if one_support <= n && one_support > level && combine(&one_digits, assigned) != ring.one() {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if a != level && b != level {
                    continue;
                }
                let (digits, sup) = &products[a][b];
                if *sup <= n && combine(digits, assigned) != ring.mul(assigned[a], assigned[b]) {
                    return false;
                }
            }
        }
        // products assigned earlier whose support just became complete
        for a in 0..level {
            for b in 0..level {
                let (digits, sup) = &products[a][b];
                if *sup == n && combine(digits, assigned) != ring.mul(assigned[a], assigned[b]) {
                    return false;
                }
            }
        }
        true
    };
    search(0, &mut assigned, &mut found, &consistent, &candidates);

    let mut autos: Vec<RingAutomorphism> = found
        .into_iter()
        .filter_map(|images| {
            let table: Vec<Elem> = ring
                .elements()
                .map(|a| combine(&ring.digits(a), &images))
                .collect();
            validate_automorphism(ring, table).ok()
        })
        .collect();
    autos.sort_by(|a, b| (!a.is_identity(), &a.images).cmp(&(!b.is_identity(), &b.images)));
    Ok(autos)
}

#[derive(Debug, Clone)]
pub struct TwistInvariants {
    /// `B^rho`
    pub fixed: AdditiveSubset,
    /// `B^D`
    pub constants: AdditiveSubset,
    /// `Z^D`
    pub central_constants: AdditiveSubset,
    /// `D(B)`
    pub image: AdditiveSubset,
}

pub fn twist_invariants(rho: &RingAutomorphism, d: &TwistDerivation) -> TwistInvariants {
    let ring = &rho.ring;
    let fixed =
        AdditiveSubset::from_sorted(ring.elements().filter(|&a| rho.apply(a) == a).collect());
    let constants = AdditiveSubset::from_sorted(
        ring.elements()
            .filter(|&a| d.apply(a) == ring.zero())
            .collect(),
    );
    let center = ring.center();
    let central_constants =
        AdditiveSubset::from_sorted(constants.iter().filter(|&a| center.contains(a)).collect());
    let image = AdditiveSubset::from_unsorted(ring.elements().map(|a| d.apply(a)).collect());
    debug_assert!(fixed.is_subring(ring));
    debug_assert!(constants.is_subring(ring) || !rho.is_identity());
    debug_assert!(image.is_additive_subgroup(ring));
    TwistInvariants {
        fixed,
        constants,
        central_constants,
        image,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_from_str;

    #[test]
    fn frobenius_on_gf4_has_order_two() {
        let r = ring_from_str("GF(2,2)").unwrap();
        // squaring is additive in characteristic 2, checked over the full table
        for a in r.elements() {
            for b in r.elements() {
                let s = r.add(a, b);
                assert_eq!(r.mul(s, s), r.add(r.mul(a, a), r.mul(b, b)));
            }
        }
        let rho = RingAutomorphism::frobenius(&r).unwrap();
        assert_eq!(rho.order(), 2);
        let (rho2, d) = validate_twist(&r, rho.table().to_vec(), vec![Elem(0); 4]).unwrap();
        assert_eq!(rho2.order(), 2);
        assert!(d.is_zero());
        let inv = twist_invariants(&rho, &d);
        assert_eq!(inv.fixed.members(), &[Elem(0), Elem(1)]);
    }

    #[test]
    fn identity_on_zmod4() {
        let r = ring_from_str("Zmod(4)").unwrap();
        let id: Vec<Elem> = r.elements().collect();
        let (rho, d) = validate_twist(&r, id, vec![Elem(0); 4]).unwrap();
        assert_eq!(rho.order(), 1);
        let inv = twist_invariants(&rho, &d);
        assert_eq!(inv.fixed.len(), 4);
        assert_eq!(inv.constants.len(), 4);
        assert_eq!(inv.image.members(), &[Elem(0)]);
    }

    #[test]
    fn ddt_on_dual_numbers_over_f2() {
        let r = ring_from_str("TruncPoly(Zmod(2),2)").unwrap();
        let t = r.parse_element("01").unwrap();
        let d = TwistDerivation::derivative(&r, r.one()).unwrap();
        assert_eq!(d.apply(t), r.one());
        // Leibniz on all 16 pairs
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(
                    d.apply(r.mul(a, b)),
                    r.add(r.mul(d.apply(a), b), r.mul(a, d.apply(b)))
                );
            }
        }
        let inv = twist_invariants(d.companion(), &d);
        assert_eq!(inv.constants.members(), &[Elem(0), Elem(1)]);
        assert_eq!(inv.image.members(), &[Elem(0), Elem(1)]);
    }

    #[test]
    fn ddt_fails_when_k_is_a_unit() {
        // d/dt(t * t^2) = 0 in F2[t]/(t^3) but the Leibniz side gives t^2
        let r = ring_from_str("TruncPoly(Zmod(2),3)").unwrap();
        let err = TwistDerivation::derivative(&r, r.one()).unwrap_err();
        assert!(
            matches!(err, Error::Twist(TwistError::Leibniz(_))),
            "{err:?}"
        );
        let t = r.parse_element("01").unwrap();
        assert!(TwistDerivation::derivative(&r, t).is_ok());
        let r3 = ring_from_str("TruncPoly(Zmod(3),2)").unwrap();
        assert!(TwistDerivation::derivative(&r3, r3.one()).is_err());
        let t3 = r3.parse_element("01").unwrap();
        assert!(TwistDerivation::derivative(&r3, t3).is_ok());
    }

    #[test]
    fn rejects_broken_tables() {
        let r = ring_from_str("Zmod(4)").unwrap();
        let double: Vec<Elem> = r.elements().map(|a| r.add(a, a)).collect();
        assert!(matches!(
            validate_twist(&r, double, vec![Elem(0); 4]),
            Err(TwistError::NotMultiplicative(_)) | Err(TwistError::DoesNotFixOne)
        ));
        let id: Vec<Elem> = r.elements().collect();
        let bad_d = vec![Elem(0), Elem(1), Elem(2), Elem(3)];
        assert_eq!(
            validate_twist(&r, id.clone(), bad_d).unwrap_err(),
            TwistError::DerivationOfOne
        );
        let not_additive = vec![Elem(0), Elem(1), Elem(3), Elem(2)];
        assert!(matches!(
            validate_twist(&r, not_additive, vec![Elem(0); 4]),
            Err(TwistError::NotAdditive(_))
        ));
        assert!(matches!(
            validate_twist(&r, vec![Elem(0); 3], vec![Elem(0); 4]),
            Err(TwistError::TableSize { .. })
        ));
    }

    #[test]
    fn automorphism_counts() {
        for (s, n) in [
            ("Zmod(12)", 1),
            ("GF(2,2)", 2),
            ("GF(2,3)", 3),
            ("GF(3,2)", 2),
            ("Product(Zmod(2),Zmod(2))", 2),
            ("Product(Zmod(3),Zmod(3))", 2),
        ] {
            let r = ring_from_str(s).unwrap();
            let autos = enumerate_automorphisms(&r).unwrap();
            assert_eq!(autos.len(), n, "{s}");
            assert!(autos[0].is_identity());
        }
        let big = ring_from_str("Zmod(300)").unwrap();
        assert!(enumerate_automorphisms(&big).is_err());
    }

    #[test]
    fn inner_derivation_on_ut2() {
        let r = ring_from_str("UT2(Zmod(2))").unwrap();
        let id = RingAutomorphism::identity(&r);
        let e12 = r.parse_element("[0,1,0]").unwrap();
        let d = inner_twist_derivation(e12, &id);
        assert!(!d.is_zero());
        for diag in ["[1,0,0]", "[0,0,1]", "[1,0,1]"] {
            let a = r.parse_element(diag).unwrap();
            let expected = if diag == "[1,0,1]" { r.zero() } else { e12 };
            assert_eq!(d.apply(a), expected, "{diag}");
        }
        assert!(inner_twist_derivation(r.zero(), &id).is_zero());
        let comm = ring_from_str("Zmod(6)").unwrap();
        let idc = RingAutomorphism::identity(&comm);
        assert!(inner_twist_derivation(Elem(5), &idc).is_zero());
    }
}
