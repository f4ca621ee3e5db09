//! Separability, weak separability and weak quasi-separability of invariant
//! polynomials, decided by definitional scans and cross-checked against every
//! applicable criterion.

mod exact;
mod structural;
mod verify;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{
    casimir_separability, casimir_weak_separability, derivation_space, inner_values, tensor_trace,
    AElem, CasimirOutcome, DerivationPath, Extension,
};
use crate::ring::{find_inverse, twist_invariants, AdditiveSubset, Elem};
use crate::skew::{
    discriminant, formal_derivative, invariance_conditions_d, invariance_conditions_rho,
    is_invariant_definitional, SkewPolynomial, TwistContext, TwistKind,
};

pub use exact::{exact_sequence_check, ExactnessReport, NodeReport, SequenceKind};
pub use structural::{structural_checks, StructuralViolation};
pub use verify::{
    enumerate_monic, survey, verify_theorem, verify_theorems, Mismatch, TheoremCheckResult,
    TheoremId, INSTANCE_BUDGET,
};

pub mod methods {
    //! Identifiers of the decision methods that appear in reports.
    pub const INVARIANCE_DEFINITIONAL: &str = "definitional";
    pub const INVARIANCE_RHO: &str = "rho_coefficient_conditions";
    pub const INVARIANCE_D: &str = "d_coefficient_conditions";

    pub const MIYASHITA: &str = "miyashita_element";
    pub const CASIMIR_UNIT: &str = "casimir_trace_unit";
    pub const DERIVATIVE_UNIT: &str = "derivative_unit";
    pub const DISCRIMINANT_UNIT: &str = "discriminant_unit";
    pub const TAU_RHO_SURJECTIVE: &str = "tau_rho_hits_one";
    pub const TAU_D_SURJECTIVE: &str = "tau_d_hits_one";
    pub const EXACT_5: &str = "exact_sequence_5";

    pub const DERIVATION_ORACLE: &str = "derivations_inner";
    pub const DERIVATIVE_NZD: &str = "derivative_non_zero_divisor";
    pub const DISCRIMINANT_NZD: &str = "discriminant_non_zero_divisor";
    pub const CASIMIR_NZD: &str = "casimir_trace_non_zero_divisor";
    pub const RHO_SET_EQUALITY: &str = "rho_tau_kernel_is_inner";
    pub const D_SET_EQUALITY: &str = "d_tau_kernel_is_inner";
    pub const TRACE_KERNEL: &str = "trace_kernel_equals_shifts";
    pub const CONSTANTS_EQUATION: &str = "constant_equation_equals_image";
    pub const EXACT_4: &str = "exact_sequence_4";

    pub const CENTRAL_ORACLE: &str = "central_derivations_zero";
    pub const RHO_SHIFT_NZD: &str = "rho_shift_non_zero_divisor";
    pub const BINOMIAL_NZD: &str = "binomial_non_zero_divisors";
    pub const D_IMAGE_NZD: &str = "d_image_non_zero_divisor";
    pub const B1_NZD: &str = "b1_non_zero_divisor";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Invariant,
    Separable,
    WeaklySeparable,
    WeaklyQuasiSeparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    /// decides the property; the reported verdict
    Oracle,
    /// an equivalent condition; must match the oracle
    Criterion,
    /// a sufficient condition; when it holds the oracle must hold
    Sufficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Outcome {
    pub fn of(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    fn sufficient(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Inconclusive
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodResult {
    pub method: &'static str,
    pub property: Property,
    pub kind: MethodKind,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub separable: bool,
    pub weakly_separable: bool,
    pub weakly_quasi_separable: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// `h` from the separability scan
    pub separability: Option<String>,
    /// `delta(x)` of a derivation that is not inner
    pub non_inner_derivation: Option<String>,
    /// `delta(x)` of a nonzero central derivation
    pub central_derivation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub property: Property,
    pub method: String,
    pub expected: Outcome,
    pub found: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub twist: String,
    pub poly: String,
    pub invariant: bool,
    /// absent when `f` is not invariant
    pub verdicts: Option<Verdicts>,
    pub methods: Vec<MethodResult>,
    pub witnesses: Witnesses,
    pub agreement: bool,
    /// no criterion applied beyond the definitional scans
    pub oracle_only: bool,
    pub exactness: Option<ExactnessReport>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ClassificationReport {
    pub fn method(&self, name: &str) -> Option<&MethodResult> {
        self.methods.iter().find(|m| m.method == name)
    }

    pub fn outcome(&self, name: &str) -> Option<Outcome> {
        self.method(name).map(|m| m.outcome)
    }

    fn oracle(&self, property: Property) -> Option<Outcome> {
        self.methods
            .iter()
            .find(|m| m.property == property && m.kind == MethodKind::Oracle)
            .map(|m| m.outcome)
    }
}

/// Everything computed for one invariant polynomial; `report` is the
/// serializable summary.
pub struct Analysis {
    pub report: ClassificationReport,
    pub extension: Option<Arc<Extension>>,
}

struct Builder {
    methods: Vec<MethodResult>,
    discrepancies: Vec<Discrepancy>,
}

impl Builder {
    fn push(
        &mut self,
        method: &'static str,
        property: Property,
        kind: MethodKind,
        outcome: Outcome,
    ) {
        self.methods.push(MethodResult {
            method,
            property,
            kind,
            outcome,
        });
    }

    fn flag(
        &mut self,
        property: Property,
        method: impl Into<String>,
        expected: Outcome,
        found: Outcome,
    ) {
        self.discrepancies.push(Discrepancy {
            property,
            method: method.into(),
            expected,
            found,
        });
    }

    /// Compares every criterion and sufficient condition with the oracle.
    fn reconcile(&mut self) {
        let oracles: Vec<(Property, Outcome)> = self
            .methods
            .iter()
            .filter(|m| m.kind == MethodKind::Oracle)
            .map(|m| (m.property, m.outcome))
            .collect();
        let mut found = Vec::new();
        for m in &self.methods {
            let Some(&(_, oracle)) = oracles.iter().find(|(p, _)| *p == m.property) else {
                continue;
            };
            let bad = match m.kind {
                MethodKind::Oracle => {
                    oracles.iter().filter(|(p, _)| *p == m.property).count() > 1
                        && m.outcome != oracle
                }
                MethodKind::Criterion => m.outcome != oracle,
                MethodKind::Sufficient => m.outcome == Outcome::Holds && oracle != Outcome::Holds,
            };
            if bad {
                found.push((m.property, m.method, oracle, m.outcome));
            }
        }
        for (p, name, expected, got) in found {
            self.flag(p, name, expected, got);
        }
    }
}

fn describe_twist(ctx: &TwistContext) -> String {
    if ctx.label().is_empty() {
        match ctx.kind() {
            TwistKind::Plain => "identity".into(),
            _ => "custom".into(),
        }
    } else {
        ctx.label().to_string()
    }
}

/// `f = X^m - u`: returns `u`.
fn binomial_constant(f: &SkewPolynomial) -> Option<Elem> {
    let m = f.degree()?;
    let middle_vanishes = (1..m).all(|j| f.coeff(j).0 == 0);
    middle_vanishes.then(|| f.ring().neg(f.coeff(0)))
}

pub fn classify(f: &SkewPolynomial) -> Result<ClassificationReport> {
    Ok(analyze(f)?.report)
}

pub fn analyze(f: &SkewPolynomial) -> Result<Analysis> {
    use methods::*;
    let ctx = f.context().clone();
    let ring = ctx.ring().clone();
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let m = f.degree().unwrap_or(0);
    if m == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let mut b = Builder {
        methods: Vec::new(),
        discrepancies: Vec::new(),
    };

    let invariant = is_invariant_definitional(f)?;
    b.push(
        INVARIANCE_DEFINITIONAL,
        Property::Invariant,
        MethodKind::Oracle,
        Outcome::of(invariant),
    );
    if ctx.d().is_zero() && m >= 2 {
        let rep = invariance_conditions_rho(f)?;
        b.push(
            INVARIANCE_RHO,
            Property::Invariant,
            MethodKind::Criterion,
            Outcome::of(rep.holds),
        );
    }
    if ctx.rho().is_identity() && f.as_p_polynomial().is_some() {
        let rep = invariance_conditions_d(f)?;
        b.push(
            INVARIANCE_D,
            Property::Invariant,
            MethodKind::Criterion,
            Outcome::of(rep.holds),
        );
    }

    let header = |b: Builder, verdicts, witnesses, oracle_only, exactness| {
        let mut b = b;
        b.reconcile();
        ClassificationReport {
            ring: ring.spec().to_string(),
            twist: describe_twist(&ctx),
            poly: f.to_string(),
            invariant,
            verdicts,
            agreement: b.discrepancies.is_empty(),
            methods: b.methods,
            witnesses,
            oracle_only,
            exactness,
            discrepancies: b.discrepancies,
        }
    };
    if !invariant {
        return Ok(Analysis {
            report: header(b, None, Witnesses::default(), true, None),
            extension: None,
        });
    }

    let ext = Extension::new(f)?;
    let mut witnesses = Witnesses::default();
    let plain_commutative = ctx.kind() == TwistKind::Plain && ring.is_commutative();
    let rho_type = ext.rho_tilde_defined() && m >= 2;
    let pp = ext.p_polynomial();
    let d_type = pp.is_some() && ext.d_tilde_defined();
    let mut criteria_used = false;

    // derivations
    let space = derivation_space(&ext)?;
    for (path, set) in &space.paths[1..] {
        if *set != space.paths[0].1 {
            b.flag(
                Property::WeaklySeparable,
                format!("derivation_path_{path:?}"),
                Outcome::Holds,
                Outcome::Fails,
            );
        }
    }
    let inner = inner_values(&ext);
    if inner.rho_form_agrees == Some(false) {
        b.flag(
            Property::WeaklySeparable,
            "inner_values_rho_form",
            Outcome::Holds,
            Outcome::Fails,
        );
    }
    if inner.d_form_agrees == Some(false) {
        b.flag(
            Property::WeaklySeparable,
            "inner_values_d_form",
            Outcome::Holds,
            Outcome::Fails,
        );
    }
    let values = space.values();
    let non_inner = values.iter().find(|g| !inner.values.contains(*g));
    let weakly_separable = non_inner.is_none();
    if let Some(g) = non_inner {
        witnesses.non_inner_derivation = Some(ext.format(&ext.decode(g.0)));
    }
    b.push(
        DERIVATION_ORACLE,
        Property::WeaklySeparable,
        MethodKind::Oracle,
        Outcome::of(weakly_separable),
    );
    if !inner.values.is_subset_of(&values) {
        b.flag(
            Property::WeaklySeparable,
            "inner_derivations_are_derivations",
            Outcome::Holds,
            Outcome::Fails,
        );
    }
    let central = space
        .derivations
        .iter()
        .find(|d| !d.is_zero() && d.kind() == crate::extension::DerivationKind::Central);
    let wqs = central.is_none();
    if let Some(d) = central {
        witnesses.central_derivation = Some(ext.format(d.value_at_x()));
    }
    b.push(
        CENTRAL_ORACLE,
        Property::WeaklyQuasiSeparable,
        MethodKind::Oracle,
        Outcome::of(wqs),
    );

    // separability: Miyashita's element, then family-specific criteria
    let ys: Vec<AElem> = (0..m).map(|j| ext.y(j)).collect();
    let xs: Vec<AElem> = (0..m).map(|j| ext.x_pow(j)).collect();
    let one = ext.one();
    let miyashita = ext.elements().find(|h| {
        ext.satisfies_miyashita_twist(h) && {
            let mut acc = ext.zero();
            for j in 0..m {
                acc = ext.add(&acc, &ext.mul(&ext.mul(&ys[j], h), &xs[j]));
            }
            acc == one
        }
    });
    let mut separable = miyashita.is_some();
    let mut separability_witness = miyashita.clone();
    if plain_commutative {
        criteria_used = true;
        let tc = crate::extension::tensor_centralizer(&ext)?;
        if !tc.matches_parameterization {
            b.flag(
                Property::Separable,
                "tensor_centralizer_parameterization",
                Outcome::Holds,
                Outcome::Fails,
            );
        }
        let casimir = casimir_separability(&ext, &tc)?;
        // the tensor criterion is the definition of separability here
        b.push(
            CASIMIR_UNIT,
            Property::Separable,
            MethodKind::Oracle,
            Outcome::of(casimir.is_some()),
        );
        b.push(
            MIYASHITA,
            Property::Separable,
            MethodKind::Criterion,
            Outcome::of(separable),
        );
        separable = casimir.is_some();
        separability_witness = casimir;
        let df = ext.from_polynomial(&formal_derivative(f)?)?;
        b.push(
            DERIVATIVE_UNIT,
            Property::Separable,
            MethodKind::Criterion,
            Outcome::of(find_inverse(&*ext, &df).is_some()),
        );
        let disc = discriminant(f)?;
        b.push(
            DISCRIMINANT_UNIT,
            Property::Separable,
            MethodKind::Criterion,
            Outcome::of(ring.is_unit(disc)),
        );
        b.push(
            DERIVATIVE_NZD,
            Property::WeaklySeparable,
            MethodKind::Criterion,
            Outcome::of(ext.non_zero_divisor(&df)),
        );
        b.push(
            DISCRIMINANT_NZD,
            Property::WeaklySeparable,
            MethodKind::Criterion,
            Outcome::of(ring.is_non_zero_divisor(disc)),
        );
        let weak = casimir_weak_separability(&ext, &tc)?;
        b.push(
            CASIMIR_NZD,
            Property::WeaklySeparable,
            MethodKind::Sufficient,
            Outcome::sufficient(matches!(weak, CasimirOutcome::WeaklySeparable(_))),
        );
        if let CasimirOutcome::WeaklySeparable(h) = &weak {
            debug_assert!(ext.non_zero_divisor(&tensor_trace(
                &ext,
                &tc.parameterized[ext.encode(h) as usize]
            )));
        }
    } else {
        b.push(
            MIYASHITA,
            Property::Separable,
            MethodKind::Oracle,
            Outcome::of(separable),
        );
    }
    if let Some(h) = &separability_witness {
        witnesses.separability = Some(ext.format(h));
    }

    let rho = ctx.rho();
    let m_is_order = rho.order() as usize == m;
    if rho_type {
        criteria_used = true;
        let kernel = space
            .path(DerivationPath::RhoLemma)
            .expect("rho lemma path");
        let v = ext.centralizer();
        let shifts = ext.image_of(&v, |h| ext.mul_x_left(&ext.sub(&ext.rho_tilde(h), h)));
        b.push(
            RHO_SET_EQUALITY,
            Property::WeaklySeparable,
            MethodKind::Criterion,
            Outcome::of(*kernel == shifts),
        );
        if m_is_order {
            let j = ext.twisted_centralizer(1);
            let hit = ext
                .subset_elements(&j)
                .any(|h| ext.tau_rho_unchecked(&h) == one);
            b.push(
                TAU_RHO_SURJECTIVE,
                Property::Separable,
                MethodKind::Criterion,
                Outcome::of(hit),
            );
        }
        // a field, m = ord(rho), f = X^m - u with u != 0
        if let Some(u) = binomial_constant(f) {
            if m_is_order && u.0 != 0 && ring.is_commutative() && ring.is_domain() {
                let traces = AdditiveSubset::from_sorted(
                    ring.elements()
                        .filter(|&c| {
                            let mut s = ring.zero();
                            for j in 0..m as u32 {
                                s = ring.add(s, rho.apply_pow(c, j));
                            }
                            s.0 == 0
                        })
                        .collect(),
                );
                let diffs = AdditiveSubset::from_unsorted(
                    ring.elements().map(|c| ring.sub(rho.apply(c), c)).collect(),
                );
                b.push(
                    TRACE_KERNEL,
                    Property::WeaklySeparable,
                    MethodKind::Criterion,
                    Outcome::of(traces == diffs),
                );
            }
        }
    }
    if d_type {
        criteria_used = true;
        let pp = pp.as_ref().unwrap();
        let kernel = space.path(DerivationPath::DLemma).expect("d lemma path");
        let v = ext.centralizer();
        let image = ext.image_of(&v, |h| ext.d_tilde(h));
        b.push(
            D_SET_EQUALITY,
            Property::WeaklySeparable,
            MethodKind::Criterion,
            Outcome::of(*kernel == image),
        );
        let hit = ext
            .subset_elements(&v)
            .any(|h| ext.tau_d_unchecked(&h) == one);
        b.push(
            TAU_D_SURJECTIVE,
            Property::Separable,
            MethodKind::Criterion,
            Outcome::of(hit),
        );
        // a domain, f = X^p + X b_1 + b_0
        if pp.e == 1 && ring.is_domain() {
            let d = ctx.d();
            let lhs = AdditiveSubset::from_sorted(
                ring.elements()
                    .filter(|&c| ring.add(d.apply_pow(c, pp.p - 1), ring.mul(c, pp.b[1])).0 == 0)
                    .collect(),
            );
            let image = twist_invariants(rho, d).image;
            b.push(
                CONSTANTS_EQUATION,
                Property::WeaklySeparable,
                MethodKind::Criterion,
                Outcome::of(lhs == image),
            );
        }
    }

    let exactness = if rho_type && m_is_order && ctx.d().is_zero() {
        Some(exact_sequence_check(&ext, SequenceKind::Automorphism)?)
    } else if d_type {
        Some(exact_sequence_check(&ext, SequenceKind::Derivation)?)
    } else {
        None
    };
    if let Some(ex) = &exactness {
        b.push(
            EXACT_4,
            Property::WeaklySeparable,
            MethodKind::Criterion,
            Outcome::of(ex.exact_without_final),
        );
        b.push(
            EXACT_5,
            Property::Separable,
            MethodKind::Criterion,
            Outcome::of(ex.exact_with_final),
        );
        if !ex.maps_well_defined {
            b.flag(
                Property::WeaklySeparable,
                "exact_sequence_maps",
                Outcome::Holds,
                Outcome::Fails,
            );
        }
    }

    // sufficient conditions for weak quasi-separability
    let nzd = |s: &AdditiveSubset| s.contains_non_zero_divisor(&ring);
    if ctx.d().is_zero() {
        if !rho.is_identity() {
            let diffs = AdditiveSubset::from_unsorted(
                ring.elements().map(|c| ring.sub(rho.apply(c), c)).collect(),
            );
            b.push(
                RHO_SHIFT_NZD,
                Property::WeaklyQuasiSeparable,
                MethodKind::Sufficient,
                Outcome::sufficient(nzd(&diffs)),
            );
        }
        if let Some(u) = binomial_constant(f) {
            let fires =
                ring.is_non_zero_divisor(ring.from_int(m as i64)) && ring.is_non_zero_divisor(u);
            b.push(
                BINOMIAL_NZD,
                Property::WeaklyQuasiSeparable,
                MethodKind::Sufficient,
                Outcome::sufficient(fires),
            );
        }
    }
    if rho.is_identity() && !ctx.d().is_zero() {
        let image = twist_invariants(rho, ctx.d()).image;
        b.push(
            D_IMAGE_NZD,
            Property::WeaklyQuasiSeparable,
            MethodKind::Sufficient,
            Outcome::sufficient(nzd(&image)),
        );
    }
    if let (true, Some(pp)) = (d_type, &pp) {
        b.push(
            B1_NZD,
            Property::WeaklyQuasiSeparable,
            MethodKind::Sufficient,
            Outcome::sufficient(ring.is_non_zero_divisor(pp.b[1])),
        );
    }

    if separable && !weakly_separable {
        b.flag(
            Property::WeaklySeparable,
            "separable_implies_weakly_separable",
            Outcome::Holds,
            Outcome::Fails,
        );
    }
    let verdicts = Verdicts {
        separable,
        weakly_separable,
        weakly_quasi_separable: wqs,
    };
    let report = header(b, Some(verdicts), witnesses, !criteria_used, exactness);
    Ok(Analysis {
        report,
        extension: Some(ext),
    })
}

/// Classification of one polynomial given as text in a context.
pub fn classify_text(ctx: &Arc<TwistContext>, poly: &str) -> Result<ClassificationReport> {
    classify(&crate::skew::parse_polynomial(ctx, poly)?)
}
