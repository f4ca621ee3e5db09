//! Identities that every analysed instance must satisfy, independent of the
//! verdicts.

use serde::Serialize;

use super::Analysis;
use crate::extension::derivation_space;
use crate::skew::{formal_derivative, TwistKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StructuralViolation {
    pub check: &'static str,
    pub poly: String,
    pub detail: String,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Runs every identity whose hypotheses hold for this instance.
pub fn structural_checks(analysis: &Analysis) -> Vec<StructuralViolation> {
    let report = &analysis.report;
    let mut out = Vec::new();
    let mut fail = |check: &'static str, detail: String| {
        out.push(StructuralViolation {
            check,
            poly: report.poly.clone(),
            detail,
        })
    };
    if let Some(v) = &report.verdicts {
        if v.separable && !v.weakly_separable {
            fail("separable_implies_weakly_separable", String::new());
        }
    }
    let Some(ext) = &analysis.extension else {
        return out;
    };
    let m = ext.degree();
    let gens = ext.additive_generators();
    let ring = ext.base();

    // hx^k = x^k rho~^k(h)
    if ext.rho_tilde_defined() {
        for h in &gens {
            let mut lhs = h.clone();
            for k in 1..=m {
                lhs = ext.mul_x_right(&lhs);
                let rhs = ext.mul(&ext.x_pow(k), &ext.rho_tilde_pow(h, k as u32));
                if lhs != rhs {
                    fail(
                        "power_commutation",
                        format!("h = {}, k = {k}", ext.format(h)),
                    );
                }
            }
        }
        if m >= 2 {
            // tau(x(rho~(h) - h)) = 0 on V
            let v = ext.centralizer();
            for h in ext.subset_elements(&v) {
                let g = ext.mul_x_left(&ext.sub(&ext.rho_tilde(&h), &h));
                if !ext.tau_rho_unchecked(&g).is_zero() {
                    fail("tau_kills_inner_values", format!("h = {}", ext.format(&h)));
                }
            }
        }
    }

    // tau(h) = h f'(x) without a twist; tau is additive, so generators suffice
    if ext.kind() == TwistKind::Plain && ring.is_commutative() {
        let df = ext
            .from_polynomial(&formal_derivative(ext.poly()).expect("plain commutative"))
            .expect("same context");
        for h in &gens {
            if ext.tau_rho_unchecked(h) != ext.mul(h, &df) {
                fail(
                    "tau_is_derivative_multiple",
                    format!("h = {}", ext.format(h)),
                );
            }
        }
    }

    if let (Some(pp), true) = (ext.p_polynomial(), ext.d_tilde_defined()) {
        // tau o D~ = D~ o tau = 0 on V
        let v = ext.centralizer();
        for h in ext.subset_elements(&v) {
            if !ext.tau_d_unchecked(&ext.d_tilde(&h)).is_zero()
                || !ext.d_tilde(&ext.tau_d_unchecked(&h)).is_zero()
            {
                fail("tau_annihilates_d_tilde", format!("h = {}", ext.format(&h)));
            }
        }
        // delta(x^k) = sum_j C(k, j) x^j D~^(k-1-j)(delta(x)) for 2 <= k <= p^e
        let q = pp.p.pow(pp.e) as usize;
        let space = derivation_space(ext).expect("derivation space");
        for delta in &space.derivations {
            let powers = delta.on_powers();
            let g = delta.value_at_x();
            for (k, power) in powers.iter().enumerate().take(q + 1).skip(2) {
                let mut rhs = ext.zero();
                for j in 0..k {
                    let term = ext.mul(&ext.x_pow(j), &ext.d_tilde_pow(g, (k - 1 - j) as u32));
                    rhs = ext.add(&rhs, &ext.scale(binomial(k, j), &term));
                }
                if *power != rhs {
                    fail(
                        "d_power_formula",
                        format!("delta(x) = {}, k = {k}", ext.format(g)),
                    );
                }
            }
        }
    }

    // over a reduced commutative base, invariant polynomials of automorphism
    // type have coefficients fixed by rho
    if ext.context().d().is_zero() && ring.is_commutative() {
        // a nonzero nilpotent has a nonzero power squaring to zero
        let reduced = ring.elements().skip(1).all(|a| ring.mul(a, a).0 != 0);
        let rho = ext.context().rho();
        if reduced && !ext.poly().coeffs().iter().all(|&a| rho.apply(a) == a) {
            fail("semiprime_coefficients_fixed", String::new());
        }
    }
    out.sort();
    out
}
