//! Skew multiplication, division, invariance conditions and discriminants.

use std::sync::Arc;

use proptest::prelude::*;
use skewsep::cli::build_context;
use skewsep::ring::{Elem, FiniteRing};
use skewsep::skew::{
    discriminant, invariance_conditions_d, invariance_conditions_rho, is_invariant_definitional,
    monic_polynomials, SkewPolynomial, TwistContext,
};

/// `(ring, automorphism, derivation)`; the last has both twists non-trivial.
const CONTEXTS: [(&str, &str, &str); 7] = [
    ("Zmod(4)", "identity", "zero"),
    ("GF(2,2)", "frobenius", "zero"),
    ("Product(Zmod(2),Zmod(2))", "swap", "zero"),
    ("TruncPoly(Zmod(2),2)", "identity", "ddt"),
    ("UT2(Zmod(2))", "identity", "inner:[0,1,0]"),
    ("UT2(Zmod(2))", "identity", "inner:[1,1,0]"),
    ("GF(2,2)", "frobenius", "inner:01"),
];

fn ctx(i: usize) -> Arc<TwistContext> {
    let (r, a, d) = CONTEXTS[i];
    build_context(r, a, d).unwrap_or_else(|e| panic!("{r} {a} {d}: {e}"))
}

fn poly(ctx: &Arc<TwistContext>, raw: &[u32]) -> SkewPolynomial {
    let n = ctx.ring().size();
    SkewPolynomial::new(ctx, raw.iter().map(|&v| Elem(v % n)).collect())
}

/// Every polynomial of degree below `len` over `ctx`, including zero.
fn all_polys(ctx: &Arc<TwistContext>, len: usize) -> Vec<SkewPolynomial> {
    let n = ctx.ring().size();
    (0..(n as u64).pow(len as u32))
        .map(|mut idx| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = Elem((idx % n as u64) as u32);
                    idx /= n as u64;
                    c
                })
                .collect();
            SkewPolynomial::new(ctx, coeffs)
        })
        .collect()
}

fn monic_up_to(ctx: &Arc<TwistContext>, max: usize) -> Vec<SkewPolynomial> {
    (0..=max).flat_map(|m| monic_polynomials(ctx, m)).collect()
}

#[test]
fn the_mixed_context_is_mixed() {
    assert!(!ctx(6).rho().is_identity() && !ctx(6).d().is_zero());
}

/// Test-side product: expand into words over `{X} ∪ B` and rewrite `a X`
/// into `X rho(a) + D(a)` until every word is `X^k b`.
fn free_product(ctx: &Arc<TwistContext>, g: &SkewPolynomial, h: &SkewPolynomial) -> Vec<Elem> {
    #[derive(Clone, Copy)]
    enum Tok {
        X,
        C(Elem),
    }
    let r: &FiniteRing = ctx.ring();
    let word = |p: &SkewPolynomial| -> Vec<Vec<Tok>> {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let mut w = vec![Tok::X; j];
                w.push(Tok::C(c));
                w
            })
            .collect()
    };
    let mut pending: Vec<Vec<Tok>> = Vec::new();
    for u in word(g) {
        for v in word(h) {
            pending.push(u.iter().chain(&v).copied().collect());
        }
    }
    let mut out = vec![r.zero(); g.coeffs().len() + h.coeffs().len()];
    while let Some(w) = pending.pop() {
        let pos = (0..w.len().saturating_sub(1))
            .find(|&i| matches!((w[i], w[i + 1]), (Tok::C(_), Tok::X)));
        match pos {
            Some(i) => {
                let Tok::C(a) = w[i] else { unreachable!() };
                let mut twisted = w.clone();
                twisted[i] = Tok::X;
                twisted[i + 1] = Tok::C(ctx.rho().apply(a));
                pending.push(twisted);
                let mut derived = w.clone();
                derived[i] = Tok::C(ctx.d().apply(a));
                derived.remove(i + 1);
                pending.push(derived);
            }
            None => {
                let k = w.iter().take_while(|t| matches!(t, Tok::X)).count();
                let c = w[k..].iter().fold(r.one(), |acc, t| match t {
                    Tok::C(c) => r.mul(acc, *c),
                    Tok::X => unreachable!(),
                });
                out[k] = r.add(out[k], c);
            }
        }
    }
    while out.last() == Some(&r.zero()) {
        out.pop();
    }
    out
}

#[test]
fn products_match_the_rewriting_oracle() {
    for (i, setting) in CONTEXTS.iter().enumerate() {
        let c = ctx(i);
        if c.ring().size() > 16 {
            continue;
        }
        let monic = monic_up_to(&c, 2);
        for g in &monic {
            for h in &monic {
                assert_eq!(
                    g.mul(h).unwrap().coeffs(),
                    free_product(&c, g, h).as_slice(),
                    "{:?}: ({g}) ({h})",
                    setting
                );
            }
        }
    }
}

fn coeffs() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn skew_mul_is_associative_and_distributive(i in 0..CONTEXTS.len(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let ctx = ctx(i);
        let (f, g, h) = (poly(&ctx, &a), poly(&ctx, &b), poly(&ctx, &c));
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        let gh = g.add(&h).unwrap();
        prop_assert_eq!(f.mul(&gh).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(gh.mul(&f).unwrap(), g.mul(&f).unwrap().add(&h.mul(&f).unwrap()).unwrap());
    }
}

#[test]
fn left_division_round_trips() {
    for (r, a) in [
        ("Zmod(4)", "identity"),
        ("GF(2,2)", "identity"),
        ("GF(2,2)", "frobenius"),
    ] {
        let c = build_context(r, a, "zero").unwrap();
        let divisors: Vec<SkewPolynomial> =
            (1..=2).flat_map(|m| monic_polynomials(&c, m)).collect();
        for g in all_polys(&c, 5) {
            for f in &divisors {
                let (q, rem) = g.left_divmod(f).unwrap();
                assert_eq!(
                    f.mul(&q).unwrap().add(&rem).unwrap(),
                    g,
                    "{r} {a}: {g} by {f}"
                );
                assert!(rem.degree().is_none_or(|d| d < f.degree().unwrap()));
            }
        }
    }
}

#[test]
fn rho_conditions_match_the_definition() {
    for (r, a) in [
        ("GF(2,2)", "frobenius"),
        ("Product(Zmod(2),Zmod(2))", "swap"),
    ] {
        let c = build_context(r, a, "zero").unwrap();
        let m = c.rho().order() as usize;
        let mut invariant = 0;
        for f in monic_polynomials(&c, m) {
            let def = is_invariant_definitional(&f).unwrap();
            invariant += def as usize;
            assert_eq!(
                def,
                invariance_conditions_rho(&f).unwrap().holds,
                "{r}: {f}"
            );
        }
        assert!(invariant > 0, "{r}");
    }
}

#[test]
fn ddt_on_truncpoly_z3_2_is_rejected() {
    // t^2 = 0 but D(t^2) = 2t
    assert!(build_context("TruncPoly(Zmod(3),2)", "identity", "ddt").is_err());
}

/// `d/dt` is a derivation of `TruncPoly(Z/p, n)` only when `p | n`; `t d/dt`
/// stands in for it on `TruncPoly(Z/3, 2)`.
#[test]
fn d_conditions_match_the_definition_on_p_polynomials() {
    for (r, d) in [
        ("TruncPoly(Zmod(2),2)", "ddt"),
        ("TruncPoly(Zmod(3),2)", "ddt:01"),
        ("TruncPoly(Zmod(3),3)", "ddt"),
    ] {
        let c = build_context(r, "identity", d).unwrap();
        let p = c.ring().characteristic() as usize;
        let mut seen = 0;
        for f in monic_polynomials(&c, p) {
            if f.as_p_polynomial().is_none_or(|pp| pp.e != 1) {
                continue;
            }
            seen += 1;
            let def = is_invariant_definitional(&f).unwrap();
            assert_eq!(def, invariance_conditions_d(&f).unwrap().holds, "{r}: {f}");
        }
        let n = c.ring().size() as usize;
        assert_eq!(seen, n * n, "{r}");
    }
}

/// `Z/n[X]/(f)` for monic `f`, on plain integer coefficient vectors.
struct Quotient {
    n: i64,
    f: Vec<i64>,
}

impl Quotient {
    fn m(&self) -> usize {
        self.f.len() - 1
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let m = self.m();
        let mut prod = vec![0i64; 2 * m];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.n;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            for j in 0..m {
                prod[k - m + j] = (prod[k - m + j] - c * self.f[j]).rem_euclid(self.n);
            }
            prod[k] = 0;
        }
        prod.truncate(m);
        prod
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        let m = self.m() as u32;
        (0..self.n.pow(m))
            .map(|mut idx| {
                (0..m)
                    .map(|_| {
                        let d = idx % self.n;
                        idx /= self.n;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    fn derivative(&self) -> Vec<i64> {
        (0..self.m())
            .map(|j| ((j as i64 + 1) * self.f[j + 1]).rem_euclid(self.n))
            .collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn discriminant_detects_invertible_and_regular_derivatives() {
    for n in [2u32, 3, 4, 5, 6, 8, 9] {
        let c = build_context(&format!("Zmod({n})"), "identity", "zero").unwrap();
        let r = c.ring();
        for m in 1..=3 {
            for f in monic_polynomials(&c, m) {
                let q = Quotient {
                    n: n as i64,
                    f: f.coeffs().iter().map(|e| r.digits(*e)[0] as i64).collect(),
                };
                let els = q.elements();
                let df = q.derivative();
                let one: Vec<i64> = (0..m).map(|j| (j == 0) as i64).collect();
                let invertible = els.iter().any(|g| q.mul(&df, g) == one);
                let regular = els
                    .iter()
                    .all(|g| g.iter().all(|&x| x == 0) || q.mul(&df, g).iter().any(|&x| x != 0));
                let d = r.digits(discriminant(&f).unwrap())[0] as i64;
                let d_unit = gcd(d, n as i64) == 1;
                assert_eq!(d_unit, invertible, "Z/{n}: {f}");
                // in Z/n the non-zero-divisors are exactly the units
                assert_eq!(d_unit, regular, "Z/{n}: {f}");
                assert_eq!(r.is_unit(discriminant(&f).unwrap()), invertible);
            }
        }
    }
}

#[test]
fn quadratic_discriminant_over_z8() {
    let c = build_context("Zmod(8)", "identity", "zero").unwrap();
    let r = c.ring();
    for f in monic_polynomials(&c, 2) {
        let (b, a) = (f.coeff(0), f.coeff(1));
        let expected = r.sub(r.mul(a, a), r.scale(4, b));
        assert_eq!(discriminant(&f).unwrap(), expected, "{f}");
    }
}

/// Invariance is tested on generators of `B` and `X`; arbitrary left
/// multipliers must agree.
#[test]
fn random_left_multipliers_of_invariant_polynomials() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (i, setting) in CONTEXTS.iter().enumerate() {
        let c = ctx(i);
        let mut tested = 0;
        for f in monic_up_to(&c, 3) {
            if f.degree() == Some(0) || !is_invariant_definitional(&f).unwrap() {
                continue;
            }
            for _ in 0..100 {
                let raw: Vec<u32> = (0..rng.gen_range(1..5)).map(|_| rng.gen()).collect();
                let g = poly(&c, &raw);
                assert!(
                    g.mul(&f).unwrap().is_right_multiple_of(&f).unwrap(),
                    "{g} times {f}"
                );
            }
            tested += 1;
            if tested == 20 {
                break;
            }
        }
        assert!(tested > 0, "{setting:?}");
    }
}
