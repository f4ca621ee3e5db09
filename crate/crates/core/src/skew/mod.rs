//! Skew polynomials `B[X; rho, D]` with the rule `a X = X rho(a) + D(a)`.
//!
//! Polynomials are kept in right-coefficient normal form `sum X^j a_j`.

mod discriminant;
mod invariance;
mod text;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RingAutomorphism, TwistDerivation};

pub use discriminant::{determinant, discriminant, formal_derivative, sylvester_matrix};
pub use invariance::{
    invariance_conditions_d, invariance_conditions_rho, is_invariant_definitional, ConditionReport,
    PPolynomial,
};
pub use text::parse_polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistKind {
    /// `rho = id`, `D = 0`
    Plain,
    /// `D = 0`, `rho != id`
    Automorphism,
    /// `rho = id`, `D != 0`
    Derivation,
    Mixed,
}

/// The data `(B, rho, D)` fixing the multiplication of `B[X; rho, D]`.
#[derive(Debug)]
pub struct TwistContext {
    ring: Arc<FiniteRing>,
    rho: RingAutomorphism,
    d: TwistDerivation,
    label: String,
}

impl TwistContext {
    pub fn new(d: TwistDerivation) -> Arc<Self> {
        Self::with_label(d, String::new())
    }

    pub fn with_label(d: TwistDerivation, label: impl Into<String>) -> Arc<Self> {
        let rho = d.companion().clone();
        Arc::new(TwistContext {
            ring: rho.ring().clone(),
            rho,
            d,
            label: label.into(),
        })
    }

    /// The ordinary polynomial ring `B[X]`.
    pub fn plain(ring: &Arc<FiniteRing>) -> Arc<Self> {
        let rho = RingAutomorphism::identity(ring);
        Self::with_label(TwistDerivation::zero(&rho), "identity")
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn rho(&self) -> &RingAutomorphism {
        &self.rho
    }

    pub fn d(&self) -> &TwistDerivation {
        &self.d
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> TwistKind {
        match (self.rho.is_identity(), self.d.is_zero()) {
            (true, true) => TwistKind::Plain,
            (false, true) => TwistKind::Automorphism,
            (true, false) => TwistKind::Derivation,
            (false, false) => TwistKind::Mixed,
        }
    }

    pub fn is_plain(&self) -> bool {
        self.kind() == TwistKind::Plain
    }

    /// Normal form of `alpha X^k`, by `k` applications of the rewrite rule.
    pub fn pass(&self, alpha: Elem, k: usize) -> Vec<Elem> {
        let r = &self.ring;
        let mut cur = vec![alpha];
        for _ in 0..k {
            let mut next = vec![r.zero(); cur.len() + 1];
            for (j, &c) in cur.iter().enumerate() {
                // X^j c X = X^(j+1) rho(c) + X^j D(c)
                next[j + 1] = r.add(next[j + 1], self.rho.apply(c));
                next[j] = r.add(next[j], self.d.apply(c));
            }
            cur = next;
        }
        cur
    }
}

#[derive(Clone)]
pub struct SkewPolynomial {
    ctx: Arc<TwistContext>,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPolynomial({})", self)
    }
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_polynomial(self))
    }
}

impl PartialEq for SkewPolynomial {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for SkewPolynomial {}

impl SkewPolynomial {
    /// `sum X^j coeffs[j]`; trailing zeros are dropped.
    pub fn new(ctx: &Arc<TwistContext>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&Elem(0)) {
            coeffs.pop();
        }
        SkewPolynomial {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// `sum left[j] X^j`, rewritten into right-coefficient form.
    pub fn from_left_coefficients(ctx: &Arc<TwistContext>, left: &[Elem]) -> Self {
        let r = ctx.ring();
        let mut out = vec![r.zero(); left.len()];
        for (j, &a) in left.iter().enumerate() {
            for (k, c) in ctx.pass(a, j).into_iter().enumerate() {
                out[k] = r.add(out[k], c);
            }
        }
        Self::new(ctx, out)
    }

    pub fn zero(ctx: &Arc<TwistContext>) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(ctx: &Arc<TwistContext>, c: Elem) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn one(ctx: &Arc<TwistContext>) -> Self {
        Self::constant(ctx, ctx.ring().one())
    }

    /// `X^k c`
    pub fn monomial(ctx: &Arc<TwistContext>, k: usize, c: Elem) -> Self {
        let mut coeffs = vec![Elem(0); k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    pub fn x(ctx: &Arc<TwistContext>) -> Self {
        Self::monomial(ctx, 1, ctx.ring().one())
    }

    pub fn context(&self) -> &Arc<TwistContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.ctx.ring()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> Elem {
        self.coeffs.get(j).copied().unwrap_or(Elem(0))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.ring().one())
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let r = self.ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| r.add(self.coeff(j), other.coeff(j)))
            .collect();
        Ok(Self::new(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> Self {
        let r = self.ring();
        Self::new(&self.ctx, self.coeffs.iter().map(|&c| r.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `self * c` for `c` in `B`.
    pub fn mul_right(&self, c: Elem) -> Self {
        let r = self.ring();
        Self::new(
            &self.ctx,
            self.coeffs.iter().map(|&a| r.mul(a, c)).collect(),
        )
    }

    /// Product in normal form: `sum_ij X^i (a_i X^j) b_j`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let r = self.ring();
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.0 == 0 {
                    continue;
                }
                for (k, c) in self.ctx.pass(a, j).into_iter().enumerate() {
                    out[i + k] = r.add(out[i + k], r.mul(c, b));
                }
            }
        }
        Ok(Self::new(&self.ctx, out))
    }

    /// `(q, r)` with `self = f q + r` and `deg r < deg f`, for monic `f`.
    pub fn left_divmod(&self, f: &Self) -> Result<(Self, Self)> {
        self.same_context(f)?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let m = f.degree().unwrap_or(0);
        if m == 0 {
            return Err(Error::Precondition(
                "divisor must have degree at least 1".into(),
            ));
        }
        let ring = self.ring();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ring.zero(); rem.len().saturating_sub(m)];
        while rem.len() > m {
            let n = rem.len() - 1;
            let lead = rem[n];
            if lead.0 != 0 {
                // f X^(n-m) c has leading term X^n c
                quot[n - m] = ring.add(quot[n - m], lead);
                let term = Self::monomial(&self.ctx, n - m, lead);
                let sub = f.mul(&term)?;
                for (k, &c) in sub.coeffs.iter().enumerate() {
                    rem[k] = ring.sub(rem[k], c);
                }
                debug_assert_eq!(rem[n], ring.zero());
            }
            rem.pop();
        }
        let q = Self::new(&self.ctx, quot);
        let r = Self::new(&self.ctx, rem);
        debug_assert!(f.mul(&q)?.add(&r)? == *self);
        Ok((q, r))
    }

    /// Membership in the right ideal `f B[X; rho, D]`.
    pub fn is_right_multiple_of(&self, f: &Self) -> Result<bool> {
        Ok(self.left_divmod(f)?.1.is_zero())
    }

    /// Recognizes `X^(p^e) + sum_j X^(p^j) b_(j+1) + b_0`.
    pub fn as_p_polynomial(&self) -> Option<PPolynomial> {
        invariance::p_polynomial_shape(self)
    }
}

/// Normal form of `alpha X^k`.
pub fn coefficient_pass(ctx: &Arc<TwistContext>, alpha: Elem, k: usize) -> SkewPolynomial {
    SkewPolynomial::new(ctx, ctx.pass(alpha, k))
}

pub fn skew_mul(g: &SkewPolynomial, h: &SkewPolynomial) -> Result<SkewPolynomial> {
    g.mul(h)
}

pub fn monic_left_divmod(
    g: &SkewPolynomial,
    f: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial)> {
    g.left_divmod(f)
}

/// Every monic polynomial of degree `m` over the context's ring, in handle
/// order of `(a_0, ..., a_(m-1))` with `a_0` varying fastest.
pub fn monic_polynomials(
    ctx: &Arc<TwistContext>,
    m: usize,
) -> impl Iterator<Item = SkewPolynomial> + '_ {
    let size = ctx.ring().size() as u64;
    let count = size.pow(m as u32);
    (0..count).map(move |idx| {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rest = idx;
        for _ in 0..m {
            coeffs.push(Elem((rest % size) as u32));
            rest /= size;
        }
        coeffs.push(ctx.ring().one());
        SkewPolynomial::new(ctx, coeffs)
    })
}
