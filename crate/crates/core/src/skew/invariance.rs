//! Invariance of monic `f` (`f R = R f`) by definition and by coefficient
//! conditions.

use serde::Serialize;

use super::{SkewPolynomial, TwistKind};
use crate::error::{Error, Result};
use crate::ring::{twist_invariants, Elem};

/// Outcome of a coefficient test: `holds` plus a line per violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

impl ConditionReport {
    fn from_failures(failures: Vec<String>) -> Self {
        ConditionReport {
            holds: failures.is_empty(),
            failures,
        }
    }
}

/// `f = X^(p^e) + sum_(j<e) X^(p^j) b_(j+1) + b_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPolynomial {
    pub p: u32,
    pub e: u32,
    /// `b[0] = b_0`, `b[j+1]` is the coefficient of `X^(p^j)`; `b[e+1] = 1`.
    pub b: Vec<Elem>,
}

pub(super) fn p_polynomial_shape(f: &SkewPolynomial) -> Option<PPolynomial> {
    let ring = f.ring();
    let p = ring.characteristic();
    if !f.is_monic() || !crate::ring::gf::is_prime(p) {
        return None;
    }
    let m = f.degree()?;
    let mut e = 0u32;
    let mut q = 1usize;
    while q < m {
        q *= p as usize;
        e += 1;
    }
    if q != m {
        return None;
    }
    let mut allowed = vec![false; m + 1];
    allowed[0] = true;
    let mut b = vec![f.coeff(0)];
    let mut pj = 1usize;
    for _ in 0..=e {
        allowed[pj] = true;
        b.push(f.coeff(pj));
        pj *= p as usize;
    }
    let stray = (0..=m).any(|k| !allowed[k] && f.coeff(k) != ring.zero());
    (!stray).then_some(PPolynomial { p, e, b })
}

/// `f R = R f`, tested as `alpha f, X f in f R` for additive generators
/// `alpha` of `B`.
pub fn is_invariant_definitional(f: &SkewPolynomial) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let ctx = f.context();
    let ring = f.ring();
    for alpha in ring.additive_generators() {
        let af = SkewPolynomial::constant(ctx, alpha).mul(f)?;
        if !af.is_right_multiple_of(f)? {
            return Ok(false);
        }
    }
    let xf = SkewPolynomial::x(ctx).mul(f)?;
    xf.is_right_multiple_of(f)
}

/// Coefficient conditions for invariance in `B[X; rho]`, `m >= 2`:
///
/// - `alpha a_j = a_j rho^(m-j)(alpha)` for all `alpha`, `0 <= j < m`
/// - `rho(a_j) - a_j = a_(j+1) (rho(a_(m-1)) - a_(m-1))` for `0 <= j <= m-2`
/// - `a_0 (rho(a_(m-1)) - a_(m-1)) = 0`
pub fn invariance_conditions_rho(f: &SkewPolynomial) -> Result<ConditionReport> {
    let ctx = f.context();
    if !matches!(ctx.kind(), TwistKind::Plain | TwistKind::Automorphism) {
        return Err(Error::Precondition("the derivation must vanish".into()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let m = f.degree().unwrap_or(0);
    if m < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let ring = f.ring();
    let rho = ctx.rho();
    let mut failures = Vec::new();
    for j in 0..m {
        let a = f.coeff(j);
        for alpha in ring.elements() {
            let twisted = rho.apply_pow(alpha, (m - j) as u32);
            if ring.mul(alpha, a) != ring.mul(a, twisted) {
                failures.push(format!(
                    "alpha a_{j} != a_{j} rho^{}(alpha) at alpha = {}",
                    m - j,
                    ring.format_element(alpha)
                ));
            }
        }
    }
    let top = f.coeff(m - 1);
    let shift = ring.sub(rho.apply(top), top);
    for j in 0..m - 1 {
        let a = f.coeff(j);
        if ring.sub(rho.apply(a), a) != ring.mul(f.coeff(j + 1), shift) {
            failures.push(format!(
                "rho(a_{j}) - a_{j} != a_{} (rho(a_{}) - a_{})",
                j + 1,
                m - 1,
                m - 1
            ));
        }
    }
    if ring.mul(f.coeff(0), shift) != ring.zero() {
        failures.push(format!("a_0 (rho(a_{}) - a_{}) != 0", m - 1, m - 1));
    }
    Ok(ConditionReport::from_failures(failures))
}

/// Coefficient conditions for invariance of a p-polynomial in `B[X; D]`:
///
/// - `b_0` is a `D`-constant
/// - `b_(j+1)` is a central `D`-constant for `0 <= j < e`
/// - `sum_(j=0..e) D^(p^j)(alpha) b_(j+1) = b_0 alpha - alpha b_0` for all `alpha`
pub fn invariance_conditions_d(f: &SkewPolynomial) -> Result<ConditionReport> {
    let ctx = f.context();
    if !ctx.rho().is_identity() {
        return Err(Error::Precondition(
            "the automorphism must be the identity".into(),
        ));
    }
    let ring = f.ring();
    if !crate::ring::gf::is_prime(ring.characteristic()) {
        return Err(Error::Precondition(format!(
            "characteristic {} is not prime",
            ring.characteristic()
        )));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let pp =
        p_polynomial_shape(f).ok_or_else(|| Error::Precondition("not a p-polynomial".into()))?;
    let inv = twist_invariants(ctx.rho(), ctx.d());
    let d = ctx.d();
    let mut failures = Vec::new();
    if !inv.constants.contains(pp.b[0]) {
        failures.push("b_0 is not a D-constant".to_string());
    }
    for j in 0..pp.e as usize {
        if !inv.central_constants.contains(pp.b[j + 1]) {
            failures.push(format!("b_{} is not a central D-constant", j + 1));
        }
    }
    for alpha in ring.elements() {
        let mut lhs = ring.zero();
        let mut pj = 1u32;
        for j in 0..=pp.e as usize {
            lhs = ring.add(lhs, ring.mul(d.apply_pow(alpha, pj), pp.b[j + 1]));
            pj *= pp.p;
        }
        let rhs = ring.sub(ring.mul(pp.b[0], alpha), ring.mul(alpha, pp.b[0]));
        if lhs != rhs {
            failures.push(format!(
                "sum D^(p^j)(alpha) b_(j+1) != [b_0, alpha] at alpha = {}",
                ring.format_element(alpha)
            ));
        }
    }
    Ok(ConditionReport::from_failures(failures))
}
