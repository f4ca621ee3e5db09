//! Theorem checks on settings beyond the acceptance suites, and
//! classifier-wide properties on random instances.

use std::sync::Arc;

use proptest::prelude::*;
use skewsep::classify::{
    classify, methods, verify_theorem, MethodKind, Outcome, Property, TheoremId,
};
use skewsep::cli::build_context;
use skewsep::ring::Elem;
use skewsep::skew::{is_invariant_definitional, monic_polynomials, SkewPolynomial, TwistContext};

fn ctx(ring: &str, auto: &str, deriv: &str) -> Arc<TwistContext> {
    build_context(ring, auto, deriv).unwrap_or_else(|e| panic!("{ring} {auto} {deriv}: {e}"))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn constant_equation_corollary_over_fields() {
    // over a finite field every derivation vanishes, so D = 0 and the
    // criterion reduces to b_1 != 0
    for (ring, p) in [
        ("Zmod(2)", 2),
        ("Zmod(3)", 3),
        ("GF(2,2)", 2),
        ("GF(3,2)", 3),
        ("Zmod(5)", 5),
    ] {
        let r = verify_theorem(TheoremId::C3_8d, &ctx(ring, "identity", "zero"), &[p], 1).unwrap();
        let n = ctx(ring, "identity", "zero").ring().size() as u64;
        assert_eq!(r.instances_checked, n * n, "{ring}");
        assert!(r.is_clean(), "{ring}: {r:?}");
        // b_1 = 0 on n of the n^2 instances
        assert_eq!(r.conditions_holding, n * n - n, "{ring}");
    }
}

#[test]
fn trace_kernel_corollary_over_fields() {
    for (ring, m) in [
        ("GF(2,2)", 2),
        ("GF(3,2)", 2),
        ("GF(2,3)", 3),
        ("GF(5,2)", 2),
    ] {
        let r = verify_theorem(TheoremId::C3_3, &ctx(ring, "frobenius", "zero"), &[m], 1).unwrap();
        assert!(r.instances_checked > 0, "{ring}");
        assert!(r.is_clean(), "{ring}: {r:?}");
    }
}

#[test]
fn group_ring_verdicts_follow_the_order_of_the_group() {
    for n in [2u32, 3, 4, 5, 6, 8, 9, 12] {
        let c = ctx(&format!("Zmod({n})"), "identity", "zero");
        let r = verify_theorem(TheoremId::E2_2, &c, &[2, 3], 1).unwrap();
        assert_eq!(r.instances_checked, 2, "Z/{n}");
        assert!(r.is_clean(), "Z/{n}: {r:?}");
        for (report, m) in r.reports.iter().zip([2u32, 3]) {
            let v = report.verdicts.unwrap();
            // Z/n[C_m] is separable, and weakly separable, exactly when m is a unit mod n
            assert_eq!(v.separable, gcd(m, n) == 1, "Z/{n}[C_{m}]");
            assert_eq!(v.weakly_separable, gcd(m, n) == 1, "Z/{n}[C_{m}]");
        }
    }
}

#[test]
fn invariant_polynomials_over_semiprime_rings_have_fixed_coefficients() {
    for (ring, auto) in [
        ("GF(2,2)", "frobenius"),
        ("GF(3,2)", "frobenius"),
        ("GF(2,3)", "frobenius"),
        ("Product(Zmod(2),Zmod(2))", "swap"),
        ("Product(Zmod(3),Zmod(3))", "swap"),
        ("Product(GF(2,2),GF(2,2))", "swap"),
    ] {
        let c = ctx(ring, auto, "zero");
        let rho = c.rho();
        let mut invariant = 0;
        for m in 1..=3 {
            for f in monic_polynomials(&c, m) {
                if !is_invariant_definitional(&f).unwrap() {
                    continue;
                }
                invariant += 1;
                assert!(f.coeffs().iter().all(|&a| rho.apply(a) == a), "{ring}: {f}");
            }
        }
        assert!(invariant > 0, "{ring}");
    }
}

const SETTINGS: [(&str, &str, &str); 9] = [
    ("Zmod(4)", "identity", "zero"),
    ("Zmod(6)", "identity", "zero"),
    ("GF(2,2)", "frobenius", "zero"),
    ("GF(3,2)", "frobenius", "zero"),
    ("Product(Zmod(2),Zmod(2))", "swap", "zero"),
    ("TruncPoly(Zmod(2),2)", "identity", "ddt"),
    ("UT2(Zmod(2))", "identity", "inner:[0,1,0]"),
    ("UT2(Zmod(2))", "identity", "zero"),
    ("GF(2,2)", "frobenius", "inner:01"),
];

fn random_monic() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..SETTINGS.len(), prop::collection::vec(any::<u32>(), 1..4))
}

fn monic(i: usize, raw: &[u32]) -> SkewPolynomial {
    let (r, a, d) = SETTINGS[i];
    let c = ctx(r, a, d);
    let n = c.ring().size();
    let mut coeffs: Vec<Elem> = raw.iter().map(|&v| Elem(v % n)).collect();
    coeffs.push(c.ring().one());
    SkewPolynomial::new(&c, coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdicts_are_monotone_and_methods_agree((i, raw) in random_monic()) {
        let f = monic(i, &raw);
        let r = classify(&f).unwrap();
        prop_assert!(r.agreement, "{}: {:?}", f, r.discrepancies);
        if let Some(v) = r.verdicts {
            prop_assert!(!v.separable || v.weakly_separable, "{}", f);
            // sufficient conditions never fire on a negative verdict
            for m in &r.methods {
                if m.kind == MethodKind::Sufficient && m.outcome == Outcome::Holds {
                    let oracle = match m.property {
                        Property::Separable => v.separable,
                        Property::WeaklySeparable => v.weakly_separable,
                        Property::WeaklyQuasiSeparable => v.weakly_quasi_separable,
                        _ => true,
                    };
                    prop_assert!(oracle, "{}: {}", f, m.method);
                }
            }
        } else {
            prop_assert!(!r.invariant);
        }
    }

    #[test]
    fn classification_is_deterministic((i, raw) in random_monic()) {
        let a = classify(&monic(i, &raw)).unwrap();
        let b = classify(&monic(i, &raw)).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn the_exactness_criteria_track_the_oracles_on_a_derivation_example() {
    let r = classify(
        &skewsep::skew::parse_polynomial(
            &ctx("TruncPoly(Zmod(2),2)", "identity", "ddt"),
            "X^2 + 1",
        )
        .unwrap(),
    )
    .unwrap();
    let v = r.verdicts.unwrap();
    assert_eq!(
        r.outcome(methods::EXACT_4),
        Some(Outcome::of(v.weakly_separable))
    );
    assert_eq!(r.outcome(methods::EXACT_5), Some(Outcome::of(v.separable)));
}
