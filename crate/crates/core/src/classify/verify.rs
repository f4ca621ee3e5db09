//! Theorem checks and surveys over every monic polynomial of given degrees.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    analyze, methods, structural_checks, Analysis, ClassificationReport, Outcome, Property,
    StructuralViolation,
};
use crate::error::{Error, Result};
use crate::extension::{is_in_tensor_centralizer, tensor_trace, Extension, TensorElem};
use crate::skew::{
    is_invariant_definitional, monic_polynomials, SkewPolynomial, TwistContext, TwistKind,
};

/// Largest number of polynomials a single run may enumerate.
pub const INSTANCE_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    P1_2,
    T2_4,
    L2_1,
    E2_2,
    T3_2,
    C3_3,
    T3_4,
    P3_5,
    T3_8,
    C3_8d,
    T3_9,
    P3_10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::P1_2,
        TheoremId::T2_4,
        TheoremId::L2_1,
        TheoremId::E2_2,
        TheoremId::T3_2,
        TheoremId::C3_3,
        TheoremId::T3_4,
        TheoremId::P3_5,
        TheoremId::T3_8,
        TheoremId::C3_8d,
        TheoremId::T3_9,
        TheoremId::P3_10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::P1_2 => "P1.2",
            TheoremId::T2_4 => "T2.4",
            TheoremId::L2_1 => "L2.1",
            TheoremId::E2_2 => "E2.2",
            TheoremId::T3_2 => "T3.2",
            TheoremId::C3_3 => "C3.3",
            TheoremId::T3_4 => "T3.4",
            TheoremId::P3_5 => "P3.5",
            TheoremId::T3_8 => "T3.8",
            TheoremId::C3_8d => "C3.8d",
            TheoremId::T3_9 => "T3.9",
            TheoremId::P3_10 => "P3.10",
        }
    }

    /// `(method, property, sufficient)`: the checks compared with the
    /// oracle of `property`; a sufficient check is only tested when it fires.
    fn checks(self) -> &'static [(&'static str, Property, bool)] {
        use methods::*;
        use Property::*;
        match self {
            TheoremId::P1_2 => &[
                (DERIVATIVE_UNIT, Separable, false),
                (DISCRIMINANT_UNIT, Separable, false),
            ],
            TheoremId::T2_4 => &[
                (DERIVATIVE_NZD, WeaklySeparable, false),
                (DISCRIMINANT_NZD, WeaklySeparable, false),
            ],
            TheoremId::L2_1 => &[(CASIMIR_NZD, WeaklySeparable, true)],
            TheoremId::E2_2 => &[],
            TheoremId::T3_2 => &[(RHO_SET_EQUALITY, WeaklySeparable, false)],
            TheoremId::C3_3 => &[(TRACE_KERNEL, WeaklySeparable, false)],
            TheoremId::T3_4 => &[
                (EXACT_4, WeaklySeparable, false),
                (EXACT_5, Separable, false),
                (TAU_RHO_SURJECTIVE, Separable, false),
            ],
            TheoremId::P3_5 => &[
                (RHO_SHIFT_NZD, WeaklyQuasiSeparable, true),
                (BINOMIAL_NZD, WeaklyQuasiSeparable, true),
            ],
            TheoremId::T3_8 => &[(D_SET_EQUALITY, WeaklySeparable, false)],
            TheoremId::C3_8d => &[(CONSTANTS_EQUATION, WeaklySeparable, false)],
            TheoremId::T3_9 => &[
                (EXACT_4, WeaklySeparable, false),
                (EXACT_5, Separable, false),
                (TAU_D_SURJECTIVE, Separable, false),
            ],
            TheoremId::P3_10 => &[
                (D_IMAGE_NZD, WeaklyQuasiSeparable, true),
                (B1_NZD, WeaklyQuasiSeparable, true),
            ],
        }
    }

    /// Cheap test on the coefficients run before invariance and analysis.
    fn shape(self, f: &SkewPolynomial) -> bool {
        let ctx = f.context();
        let plain_commutative = ctx.kind() == TwistKind::Plain && ctx.ring().is_commutative();
        let rho_fixed = ctx.d().is_zero() && f.coeffs().iter().all(|&a| ctx.rho().apply(a) == a);
        let p_poly = ctx.rho().is_identity() && f.as_p_polynomial().is_some_and(|pp| pp.e >= 1);
        match self {
            TheoremId::P1_2 | TheoremId::T2_4 | TheoremId::L2_1 | TheoremId::E2_2 => {
                plain_commutative
            }
            TheoremId::T3_2 | TheoremId::C3_3 | TheoremId::T3_4 => {
                rho_fixed && f.degree() >= Some(2)
            }
            TheoremId::P3_5 => ctx.d().is_zero(),
            TheoremId::T3_8 | TheoremId::C3_8d | TheoremId::T3_9 => p_poly,
            TheoremId::P3_10 => ctx.rho().is_identity(),
        }
    }

    /// Whether the instance meets the hypotheses beyond what the methods
    /// themselves require.
    fn applies(self, f: &SkewPolynomial, ext: &Extension, report: &ClassificationReport) -> bool {
        let ctx = f.context();
        match self {
            TheoremId::E2_2 => {
                let m = f.degree().unwrap_or(0);
                ctx.kind() == TwistKind::Plain
                    && ctx.ring().is_commutative()
                    && f.coeff(0) == ctx.ring().neg(ctx.ring().one())
                    && (1..m).all(|j| f.coeff(j).0 == 0)
            }
            // the exactness methods are shared by both sequence kinds
            TheoremId::T3_4 => {
                ext.context().d().is_zero() && report.method(methods::TAU_RHO_SURJECTIVE).is_some()
            }
            TheoremId::T3_9 => report.method(methods::TAU_D_SURJECTIVE).is_some(),
            _ => self
                .checks()
                .iter()
                .any(|(m, _, _)| report.method(m).is_some()),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub poly: String,
    /// the condition compared with the oracle
    pub method: String,
    /// verdict of the oracle
    pub lhs: bool,
    /// verdict of the condition
    pub rhs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheckResult {
    pub theorem: String,
    pub ring: String,
    pub twist: String,
    pub degrees: Vec<usize>,
    /// monic polynomials enumerated
    pub enumerated: u64,
    /// invariant polynomials meeting the hypotheses
    pub instances_checked: u64,
    /// checked instances on which at least one listed condition holds
    pub conditions_holding: u64,
    pub mismatches: Vec<Mismatch>,
    /// disagreements recorded by the classifier on checked instances
    pub discrepancies: Vec<Mismatch>,
    pub structural_violations: Vec<StructuralViolation>,
    /// reports of the checked instances, in enumeration order
    #[serde(skip)]
    pub reports: Vec<ClassificationReport>,
}

impl TheoremCheckResult {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
            && self.discrepancies.is_empty()
            && self.structural_violations.is_empty()
    }
}

fn check_budget(ctx: &TwistContext, degrees: &[usize]) -> Result<u64> {
    let size = ctx.ring().size() as u128;
    let mut total: u128 = 0;
    for &m in degrees {
        total = total.saturating_add(size.checked_pow(m as u32).unwrap_or(u128::MAX));
    }
    if total > INSTANCE_BUDGET {
        return Err(Error::BudgetExceeded {
            instances: total,
            limit: INSTANCE_BUDGET,
        });
    }
    Ok(total as u64)
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
}

/// Every monic polynomial of the listed degrees, degree by degree.
pub fn enumerate_monic(ctx: &Arc<TwistContext>, degrees: &[usize]) -> Result<Vec<SkewPolynomial>> {
    check_budget(ctx, degrees)?;
    Ok(degrees
        .iter()
        .flat_map(|&m| monic_polynomials(ctx, m))
        .collect())
}

/// Analyses every invariant polynomial passing `keep`, in enumeration order,
/// and maps each analysis with `then` on the same workers.
fn analyse_invariant<T: Send>(
    ctx: &Arc<TwistContext>,
    degrees: &[usize],
    parallelism: usize,
    keep: impl Fn(&SkewPolynomial) -> bool + Sync,
    then: impl Fn(SkewPolynomial, Analysis) -> T + Sync,
) -> Result<(u64, Vec<T>)> {
    let polys = enumerate_monic(ctx, degrees)?;
    let enumerated = polys.len() as u64;
    let results: Vec<Result<Option<T>>> = pool(parallelism)?.install(|| {
        polys
            .into_par_iter()
            .map(|f| {
                if !keep(&f) || !is_invariant_definitional(&f)? {
                    return Ok(None);
                }
                let a = analyze(&f)?;
                Ok(Some(then(f, a)))
            })
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        if let Some(x) = r? {
            out.push(x);
        }
    }
    Ok((enumerated, out))
}

/// One report per invariant monic polynomial of the listed degrees.
pub fn survey(
    ctx: &Arc<TwistContext>,
    degrees: &[usize],
    parallelism: usize,
) -> Result<Vec<ClassificationReport>> {
    Ok(analyse_invariant(ctx, degrees, parallelism, |_| true, |_, a| a.report)?.1)
}

fn bool_of(o: Outcome) -> bool {
    o == Outcome::Holds
}

/// The group ring of the cyclic group of order `m`: `n = m` a unit forces
/// separability, a non-zero-divisor forces weak separability, and
/// `sum_i x^i (x) x^(m-i)` is `A`-central with trace `m`.
fn group_ring_checks(ext: &Extension, report: &ClassificationReport, out: &mut Vec<Mismatch>) {
    let ring = ext.base();
    let m = ext.degree();
    let n = ring.from_int(m as i64);
    let verdicts = report.verdicts.expect("invariant");
    let mut push = |method: &str, lhs: bool, rhs: bool| {
        out.push(Mismatch {
            poly: report.poly.clone(),
            method: method.into(),
            lhs,
            rhs,
        })
    };
    if ring.is_unit(n) && !verdicts.separable {
        push("order_unit_separable", false, true);
    }
    if ring.is_non_zero_divisor(n) && !verdicts.weakly_separable {
        push("order_non_zero_divisor_weakly_separable", false, true);
    }
    let mut t = TensorElem::zero(m);
    for i in 0..m {
        t.set(i, (m - i) % m, ring.one());
    }
    if !is_in_tensor_centralizer(ext, &t) {
        push("group_casimir_central", false, true);
    }
    if tensor_trace(ext, &t) != ext.embed(n) {
        push("group_casimir_trace", false, true);
    }
}

/// What one checked instance contributes to a theorem check.
struct InstanceCheck {
    report: ClassificationReport,
    fired: bool,
    mismatches: Vec<Mismatch>,
    discrepancies: Vec<Mismatch>,
    structural: Vec<StructuralViolation>,
}

/// `structural` caches the structural checks across theorems.
fn check_instance(
    theorem: TheoremId,
    f: &SkewPolynomial,
    analysis: &Analysis,
    structural: &mut Option<Vec<StructuralViolation>>,
) -> Option<InstanceCheck> {
    let report = &analysis.report;
    let ext = analysis.extension.as_ref()?;
    if !theorem.applies(f, ext, report) {
        return None;
    }
    let mut mismatches = Vec::new();
    let mut fired = false;
    for &(method, property, sufficient) in theorem.checks() {
        let (Some(found), Some(oracle)) = (report.outcome(method), report.oracle(property)) else {
            continue;
        };
        fired |= found == Outcome::Holds;
        let bad = if sufficient {
            found == Outcome::Holds && oracle != Outcome::Holds
        } else {
            found != oracle
        };
        if bad {
            mismatches.push(Mismatch {
                poly: report.poly.clone(),
                method: method.into(),
                lhs: bool_of(oracle),
                rhs: bool_of(found),
            });
        }
    }
    if theorem == TheoremId::E2_2 {
        group_ring_checks(ext, report, &mut mismatches);
    }
    let discrepancies = report
        .discrepancies
        .iter()
        .map(|d| Mismatch {
            poly: report.poly.clone(),
            method: d.method.clone(),
            lhs: bool_of(d.expected),
            rhs: bool_of(d.found),
        })
        .collect();
    Some(InstanceCheck {
        report: report.clone(),
        fired,
        mismatches,
        discrepancies,
        structural: structural
            .get_or_insert_with(|| structural_checks(analysis))
            .clone(),
    })
}

pub fn verify_theorem(
    theorem: TheoremId,
    ctx: &Arc<TwistContext>,
    degrees: &[usize],
    parallelism: usize,
) -> Result<TheoremCheckResult> {
    Ok(verify_theorems(&[theorem], ctx, degrees, parallelism)?.remove(0))
}

/// Checks several theorems on one enumeration, analysing each polynomial once.
pub fn verify_theorems(
    theorems: &[TheoremId],
    ctx: &Arc<TwistContext>,
    degrees: &[usize],
    parallelism: usize,
) -> Result<Vec<TheoremCheckResult>> {
    let (enumerated, checks) = analyse_invariant(
        ctx,
        degrees,
        parallelism,
        |f| theorems.iter().any(|t| t.shape(f)),
        |f, a| {
            let mut structural = None;
            theorems
                .iter()
                .map(|&t| check_instance(t, &f, &a, &mut structural))
                .collect::<Vec<_>>()
        },
    )?;
    let mut results: Vec<TheoremCheckResult> = theorems
        .iter()
        .map(|t| TheoremCheckResult {
            theorem: t.to_string(),
            ring: ctx.ring().spec().to_string(),
            twist: super::describe_twist(ctx),
            degrees: degrees.to_vec(),
            enumerated,
            instances_checked: 0,
            conditions_holding: 0,
            mismatches: Vec::new(),
            discrepancies: Vec::new(),
            structural_violations: Vec::new(),
            reports: Vec::new(),
        })
        .collect();
    for per_instance in checks {
        for (result, c) in results.iter_mut().zip(per_instance) {
            let Some(c) = c else { continue };
            result.instances_checked += 1;
            result.conditions_holding += c.fired as u64;
            result.mismatches.extend(c.mismatches);
            result.discrepancies.extend(c.discrepancies);
            result.structural_violations.extend(c.structural);
            result.reports.push(c.report);
        }
    }
    for r in &mut results {
        r.mismatches.sort();
        r.discrepancies.sort();
        r.structural_violations.sort();
    }
    Ok(results)
}
