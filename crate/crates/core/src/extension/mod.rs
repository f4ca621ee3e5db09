//! The residue ring `A = B[X; rho, D] / f B[X; rho, D]` of an invariant `f`,
//! and the subsets and maps of `A` that the separability criteria use.
//!
//! Elements are residues `sum_(j<m) x^j c_j`. Handles enumerate them as
//! `sum_j c_j |B|^j`, which fixes the scan order everywhere.

mod derivation;
pub(crate) mod tensor;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::ring::{AdditiveSubset, Elem, FiniteRing, FiniteScan, MAX_CARRIER};
use crate::skew::{
    is_invariant_definitional, parse_polynomial, PPolynomial, SkewPolynomial, TwistContext,
    TwistKind,
};

pub use derivation::{
    derivation_space, inner_values, is_central_derivation, DerivationA, DerivationKind,
    DerivationPath, DerivationSpace, InnerValues,
};
pub use tensor::{
    casimir_separability, casimir_weak_separability, is_in_tensor_centralizer, subgroup_order,
    tensor_centralizer, tensor_trace, CasimirOutcome, CentralizerMethod, TensorCentralizer,
    TensorElem,
};

pub type Coeffs = SmallVec<[Elem; 8]>;

/// A residue `sum_j x^j c_j`, always with exactly `m` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AElem(pub Coeffs);

impl AElem {
    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.0 == 0)
    }
}

/// Subsets of `A` hold handles (see [`Extension::encode`]).
pub type ASubset = AdditiveSubset;

pub struct Extension {
    ctx: Arc<TwistContext>,
    f: SkewPolynomial,
    base: Arc<FiniteRing>,
    m: usize,
    size: u32,
    /// `pass[a * m + j]` holds the normal form of `a X^j`
    pass: Vec<Coeffs>,
    /// `x^n` for `n < 2m - 1`
    powers: Vec<Coeffs>,
    base_gens: Vec<Elem>,
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Extension({} / ({}), {} elements)",
            self.base.spec(),
            self.f,
            self.size
        )
    }
}

impl Extension {
    /// Builds `A`; `f` must be monic, invariant and of degree at least one.
    pub fn new(f: &SkewPolynomial) -> Result<Arc<Self>> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        Self::check_size(f)?;
        if !is_invariant_definitional(f)? {
            return Err(Error::NotInvariant);
        }
        Ok(Self::from_invariant(f))
    }

    fn check_size(f: &SkewPolynomial) -> Result<()> {
        let m = f.degree().unwrap_or(0);
        if m == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        let size = (f.ring().size() as u128)
            .checked_pow(m as u32)
            .unwrap_or(u128::MAX);
        if size > MAX_CARRIER {
            return Err(Error::TooLarge {
                size,
                limit: MAX_CARRIER,
            });
        }
        Ok(())
    }

    /// Skips the invariance test; callers have already established it.
    pub(crate) fn from_invariant(f: &SkewPolynomial) -> Arc<Self> {
        Self::check_size(f).expect("extension size");
        let ctx = f.context().clone();
        let base = ctx.ring().clone();
        let m = f.degree().unwrap();
        let bs = base.size();
        let mut pass = Vec::with_capacity(bs as usize * m);
        for a in base.elements() {
            for j in 0..m {
                pass.push(Coeffs::from_vec(ctx.pass(a, j)));
            }
        }
        let mut ext = Extension {
            size: bs.pow(m as u32),
            base_gens: base.additive_generators(),
            ctx,
            f: f.clone(),
            base,
            m,
            pass,
            powers: Vec::new(),
        };
        let mut cur = ext.one().0;
        for _ in 0..(2 * m).saturating_sub(1) {
            ext.powers.push(cur.clone());
            cur = ext.mul_x_left(&AElem(cur)).0;
        }
        let ext = Arc::new(ext);
        ext.assert_associative();
        ext
    }

    fn assert_associative(&self) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..32 {
            let [a, b, c] = [(); 3].map(|_| self.decode(rng.gen_range(0..self.size)));
            let left = self.mul(&self.mul(&a, &b), &c);
            let right = self.mul(&a, &self.mul(&b, &c));
            assert_eq!(left, right, "residue multiplication is not associative");
        }
    }

    pub fn context(&self) -> &Arc<TwistContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &SkewPolynomial {
        &self.f
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// `a_j`, with `a_m = 1`.
    pub fn f_coeff(&self, j: usize) -> Elem {
        self.f.coeff(j)
    }

    pub fn decode(&self, handle: u32) -> AElem {
        let bs = self.base.size();
        let mut h = handle;
        AElem(
            (0..self.m)
                .map(|_| {
                    let c = Elem(h % bs);
                    h /= bs;
                    c
                })
                .collect(),
        )
    }

    pub fn encode(&self, a: &AElem) -> u32 {
        let bs = self.base.size();
        a.0.iter().rev().fold(0, |acc, c| acc * bs + c.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = AElem> + '_ {
        (0..self.size).map(|h| self.decode(h))
    }

    /// `x^j e` for `j < m` and `e` an additive generator of `B`; these
    /// generate `(A, +)`.
    pub fn additive_generators(&self) -> Vec<AElem> {
        let mut out = Vec::new();
        for j in 0..self.m {
            for &g in &self.base_gens {
                let mut c: Coeffs = smallvec![Elem(0); self.m];
                c[j] = g;
                out.push(AElem(c));
            }
        }
        out
    }

    pub fn base_generators(&self) -> &[Elem] {
        &self.base_gens
    }

    pub fn zero(&self) -> AElem {
        AElem(smallvec![Elem(0); self.m])
    }

    pub fn embed(&self, b: Elem) -> AElem {
        let mut a = self.zero();
        a.0[0] = b;
        a
    }

    pub fn one(&self) -> AElem {
        self.embed(self.base.one())
    }

    /// The class of `X`.
    pub fn x(&self) -> AElem {
        self.x_pow(1)
    }

    pub fn x_pow(&self, k: usize) -> AElem {
        let mut a = self.one();
        for _ in 0..k {
            a = self.mul_x_left(&a);
        }
        a
    }

    pub fn from_polynomial(&self, g: &SkewPolynomial) -> Result<AElem> {
        let (_, r) = g.left_divmod(&self.f)?;
        let mut a = self.zero();
        for (j, &c) in r.coeffs().iter().enumerate() {
            a.0[j] = c;
        }
        Ok(a)
    }

    pub fn to_polynomial(&self, a: &AElem) -> SkewPolynomial {
        SkewPolynomial::new(&self.ctx, a.0.to_vec())
    }

    /// Reads a polynomial in `X` and reduces it modulo `f`.
    pub fn parse(&self, text: &str) -> Result<AElem> {
        self.from_polynomial(&parse_polynomial(&self.ctx, text)?)
    }

    pub fn format(&self, a: &AElem) -> String {
        self.to_polynomial(a).to_string().replace('X', "x")
    }

    pub fn add(&self, a: &AElem, b: &AElem) -> AElem {
        AElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&p, &q)| self.base.add(p, q))
                .collect(),
        )
    }

    pub fn sub(&self, a: &AElem, b: &AElem) -> AElem {
        AElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&p, &q)| self.base.sub(p, q))
                .collect(),
        )
    }

    pub fn neg(&self, a: &AElem) -> AElem {
        AElem(a.0.iter().map(|&p| self.base.neg(p)).collect())
    }

    pub fn scale(&self, k: i64, a: &AElem) -> AElem {
        AElem(a.0.iter().map(|&p| self.base.scale(k, p)).collect())
    }

    pub fn mul(&self, a: &AElem, b: &AElem) -> AElem {
        let r = &self.base;
        let m = self.m;
        let mut raw: SmallVec<[Elem; 16]> = smallvec![Elem(0); 2 * m - 1];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai.0 == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj.0 == 0 {
                    continue;
                }
                for (k, &c) in self.pass[ai.index() * m + j].iter().enumerate() {
                    if c.0 != 0 {
                        raw[i + k] = r.add(raw[i + k], r.mul(c, bj));
                    }
                }
            }
        }
        self.reduce(&raw)
    }

    /// Folds raw coefficients of `x^n` for `n < 2m - 1` into residues.
    fn reduce(&self, raw: &[Elem]) -> AElem {
        let r = &self.base;
        let m = self.m;
        let mut out: Coeffs = raw[..m].iter().copied().collect();
        for (n, &u) in raw.iter().enumerate().skip(m) {
            if u.0 == 0 {
                continue;
            }
            // x^n u = sum_l x^l (p_l u)
            for (l, &p) in self.powers[n].iter().enumerate() {
                out[l] = r.add(out[l], r.mul(p, u));
            }
        }
        AElem(out)
    }

    /// `a c` for `c` in `B`.
    pub fn mul_base_right(&self, a: &AElem, c: Elem) -> AElem {
        AElem(a.0.iter().map(|&p| self.base.mul(p, c)).collect())
    }

    /// `c a` for `c` in `B`.
    pub fn mul_base_left(&self, c: Elem, a: &AElem) -> AElem {
        self.mul(&self.embed(c), a)
    }

    /// `x a`: shift up, then replace `x^m` by `-sum_k x^k a_k`.
    pub fn mul_x_left(&self, a: &AElem) -> AElem {
        let r = &self.base;
        let m = self.m;
        let top = a.0[m - 1];
        let mut out = self.zero();
        for j in (1..m).rev() {
            out.0[j] = a.0[j - 1];
        }
        if top.0 != 0 {
            for k in 0..m {
                out.0[k] = r.sub(out.0[k], r.mul(self.f.coeff(k), top));
            }
        }
        out
    }

    /// `a x`, using `c x = x rho(c) + D(c)` on each coefficient.
    pub fn mul_x_right(&self, a: &AElem) -> AElem {
        let rho = self.ctx.rho();
        let d = self.ctx.d();
        let shifted = AElem(a.0.iter().map(|&c| rho.apply(c)).collect());
        let derived = AElem(a.0.iter().map(|&c| d.apply(c)).collect());
        self.add(&self.mul_x_left(&shifted), &derived)
    }

    /// `alpha h = h rho^k(alpha)` for all `alpha` in `B`; `k = 0` tests
    /// membership in the centralizer of `B`.
    pub fn in_twisted_centralizer(&self, h: &AElem, k: u32) -> bool {
        let rho = self.ctx.rho();
        self.base_gens
            .iter()
            .all(|&g| self.mul_base_left(g, h) == self.mul_base_right(h, rho.apply_pow(g, k)))
    }

    /// `rho^(m-1)(alpha) h = h alpha` for all `alpha` in `B`.
    pub fn satisfies_miyashita_twist(&self, h: &AElem) -> bool {
        let rho = self.ctx.rho();
        let k = (self.m as u32).saturating_sub(1);
        self.base_gens
            .iter()
            .all(|&g| self.mul_base_left(rho.apply_pow(g, k), h) == self.mul_base_right(h, g))
    }

    pub fn is_central(&self, h: &AElem) -> bool {
        self.in_twisted_centralizer(h, 0) && self.mul_x_left(h) == self.mul_x_right(h)
    }

    fn collect(&self, pred: impl Fn(&AElem) -> bool) -> ASubset {
        ASubset::from_sorted(
            (0..self.size)
                .filter(|&h| pred(&self.decode(h)))
                .map(Elem)
                .collect(),
        )
    }

    pub fn subset_elements<'a>(&'a self, s: &'a ASubset) -> impl Iterator<Item = AElem> + 'a {
        s.iter().map(|h| self.decode(h.0))
    }

    /// `V`, the centralizer of `B` in `A`.
    pub fn centralizer(&self) -> ASubset {
        self.collect(|h| self.in_twisted_centralizer(h, 0))
    }

    /// `C(A)`.
    pub fn center(&self) -> ASubset {
        self.collect(|h| self.is_central(h))
    }

    /// `J_(rho^k)`.
    pub fn twisted_centralizer(&self, k: u32) -> ASubset {
        self.collect(|h| self.in_twisted_centralizer(h, k))
    }

    pub fn centralizer_sets(&self) -> CentralizerSets {
        let v = self.centralizer();
        let center = self.center();
        let j = (1..=self.m as u32)
            .map(|k| self.twisted_centralizer(k))
            .collect();
        let fixed = match self.kind() {
            TwistKind::Plain | TwistKind::Automorphism if self.rho_tilde_defined() => {
                Some(ASubset::from_sorted(
                    self.subset_elements(&v)
                        .filter(|h| self.rho_tilde(h) == *h)
                        .map(|h| Elem(self.encode(&h)))
                        .collect(),
                ))
            }
            _ => None,
        };
        let constants = if self.d_tilde_defined() {
            Some(ASubset::from_sorted(
                self.subset_elements(&v)
                    .filter(|h| self.d_tilde(h).is_zero())
                    .map(|h| Elem(self.encode(&h)))
                    .collect(),
            ))
        } else {
            None
        };
        debug_assert!(self.is_subring(&v));
        debug_assert!(self.is_subring(&center));
        CentralizerSets {
            v,
            center,
            j,
            v_rho_fixed: fixed,
            v_d_constants: constants,
        }
    }

    pub fn is_subring(&self, s: &ASubset) -> bool {
        let one = Elem(self.encode(&self.one()));
        s.contains(one)
            && s.iter().all(|a| {
                let a = self.decode(a.0);
                s.iter().all(|b| {
                    let b = self.decode(b.0);
                    s.contains(Elem(self.encode(&self.sub(&a, &b))))
                        && s.contains(Elem(self.encode(&self.mul(&a, &b))))
                })
            })
    }

    pub fn kind(&self) -> TwistKind {
        self.ctx.kind()
    }

    /// `rho~` exists when `D = 0` and every coefficient of `f` is `rho`-fixed.
    pub fn rho_tilde_defined(&self) -> bool {
        let rho = self.ctx.rho();
        self.ctx.d().is_zero() && self.f.coeffs().iter().all(|&a| rho.apply(a) == a)
    }

    /// `D~` exists when `rho = 1` and every coefficient of `f` is a `D`-constant.
    pub fn d_tilde_defined(&self) -> bool {
        let d = self.ctx.d();
        self.ctx.rho().is_identity() && self.f.coeffs().iter().all(|&a| d.apply(a).0 == 0)
    }

    /// `rho~(sum x^j c_j) = sum x^j rho(c_j)`.
    pub fn rho_tilde(&self, a: &AElem) -> AElem {
        let rho = self.ctx.rho();
        AElem(a.0.iter().map(|&c| rho.apply(c)).collect())
    }

    pub fn rho_tilde_pow(&self, a: &AElem, k: u32) -> AElem {
        let rho = self.ctx.rho();
        AElem(a.0.iter().map(|&c| rho.apply_pow(c, k)).collect())
    }

    /// `D~(sum x^j c_j) = sum x^j D(c_j)`.
    pub fn d_tilde(&self, a: &AElem) -> AElem {
        let d = self.ctx.d();
        AElem(a.0.iter().map(|&c| d.apply(c)).collect())
    }

    pub fn d_tilde_pow(&self, a: &AElem, k: u32) -> AElem {
        let d = self.ctx.d();
        AElem(a.0.iter().map(|&c| d.apply_pow(c, k)).collect())
    }

    /// The endomorphism of `A` induced by the twist, after checking that it
    /// exists and is an automorphism (resp. derivation) on generator pairs.
    pub fn induced_endo(&self, kind: EndoKind) -> Result<InducedEndo<'_>> {
        let ok = match kind {
            EndoKind::RhoTilde => self.rho_tilde_defined(),
            EndoKind::DTilde => self.d_tilde_defined(),
        };
        if !ok {
            return Err(Error::Precondition(match kind {
                EndoKind::RhoTilde => "coefficients of f are not fixed by rho".into(),
                EndoKind::DTilde => "coefficients of f are not D-constants".into(),
            }));
        }
        let endo = InducedEndo { ext: self, kind };
        let gens = self.additive_generators();
        for a in &gens {
            for b in &gens {
                let ab = endo.apply(&self.mul(a, b));
                let expected = match kind {
                    EndoKind::RhoTilde => self.mul(&endo.apply(a), &endo.apply(b)),
                    EndoKind::DTilde => {
                        self.add(&self.mul(&endo.apply(a), b), &self.mul(a, &endo.apply(b)))
                    }
                };
                assert_eq!(
                    ab, expected,
                    "induced map is not compatible with multiplication"
                );
            }
        }
        Ok(endo)
    }

    /// The p-polynomial data of `f` when `A` is of derivation type.
    pub fn p_polynomial(&self) -> Option<PPolynomial> {
        if !self.ctx.rho().is_identity() {
            return None;
        }
        self.f.as_p_polynomial().filter(|pp| pp.e >= 1)
    }

    /// `tau(h) = sum_k x^k (sum_(j<=k) rho~^j(h)) a_(k+1)` on `J_rho`.
    pub fn tau_rho(&self, h: &AElem) -> Result<AElem> {
        if !self.rho_tilde_defined() {
            return Err(Error::Precondition(
                "tau needs D = 0 and coefficients fixed by rho".into(),
            ));
        }
        if !self.in_twisted_centralizer(h, 1) {
            return Err(Error::Precondition(
                "argument of tau lies outside J_rho".into(),
            ));
        }
        Ok(self.tau_rho_unchecked(h))
    }

    pub(crate) fn tau_rho_unchecked(&self, h: &AElem) -> AElem {
        let mut partial = self.zero();
        let mut twisted = h.clone();
        let mut acc = self.zero();
        let mut xk = self.one();
        for k in 0..self.m {
            partial = self.add(&partial, &twisted);
            let term = self.mul(&xk, &self.mul_base_right(&partial, self.f.coeff(k + 1)));
            acc = self.add(&acc, &term);
            twisted = self.rho_tilde(&twisted);
            xk = self.mul_x_left(&xk);
        }
        acc
    }

    /// `tau(h) = sum_(j=0..e) D~^(p^j - 1)(h) b_(j+1)` on `V`.
    pub fn tau_d(&self, h: &AElem) -> Result<AElem> {
        if self.p_polynomial().is_none() || !self.d_tilde_defined() {
            return Err(Error::Precondition(
                "tau needs rho = 1 and f a p-polynomial".into(),
            ));
        }
        if !self.in_twisted_centralizer(h, 0) {
            return Err(Error::Precondition("argument of tau lies outside V".into()));
        }
        Ok(self.tau_d_unchecked(h))
    }

    pub(crate) fn tau_d_unchecked(&self, h: &AElem) -> AElem {
        let pp = self.p_polynomial().expect("p-polynomial");
        let mut acc = self.zero();
        let mut pj = 1u32;
        for j in 0..=pp.e as usize {
            let term = self.mul_base_right(&self.d_tilde_pow(h, pj - 1), pp.b[j + 1]);
            acc = self.add(&acc, &term);
            pj *= pp.p;
        }
        acc
    }

    /// `y_j = sum_(k=j+1..m) x^(k-j-1) a_k`, so `y_(m-1) = 1`.
    pub fn y(&self, j: usize) -> AElem {
        let mut acc = self.zero();
        let mut xp = self.one();
        for k in j + 1..=self.m {
            acc = self.add(&acc, &self.mul_base_right(&xp, self.f.coeff(k)));
            xp = self.mul_x_left(&xp);
        }
        acc
    }

    /// `sum_j y_j h x^j`.
    pub fn miyashita_sum(&self, h: &AElem) -> AElem {
        let mut acc = self.zero();
        for j in 0..self.m {
            let term = self.mul(&self.mul(&self.y(j), h), &self.x_pow(j));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Handle of an element, wrapped for use in subsets.
    pub fn handle(&self, a: &AElem) -> Elem {
        Elem(self.encode(a))
    }

    pub fn image_of(&self, s: &ASubset, map: impl Fn(&AElem) -> AElem) -> ASubset {
        ASubset::from_unsorted(
            self.subset_elements(s)
                .map(|h| self.handle(&map(&h)))
                .collect(),
        )
    }

    pub fn non_zero_divisor(&self, a: &AElem) -> bool {
        crate::ring::is_non_zero_divisor(self, a)
    }

    pub fn is_commutative(&self) -> bool {
        let gens = self.additive_generators();
        gens.iter()
            .all(|a| gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[derive(Debug, Clone)]
pub struct CentralizerSets {
    /// `V`
    pub v: ASubset,
    /// `C(A)`
    pub center: ASubset,
    /// `j[k - 1] = J_(rho^k)` for `1 <= k <= m`
    pub j: Vec<ASubset>,
    /// `V^rho~`, when `rho~` exists
    pub v_rho_fixed: Option<ASubset>,
    /// `V^D~`, when `D~` exists
    pub v_d_constants: Option<ASubset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndoKind {
    RhoTilde,
    DTilde,
}

pub struct InducedEndo<'a> {
    ext: &'a Extension,
    kind: EndoKind,
}

impl InducedEndo<'_> {
    pub fn kind(&self) -> EndoKind {
        self.kind
    }

    pub fn apply(&self, a: &AElem) -> AElem {
        match self.kind {
            EndoKind::RhoTilde => self.ext.rho_tilde(a),
            EndoKind::DTilde => self.ext.d_tilde(a),
        }
    }
}

impl FiniteScan for Extension {
    type Item = AElem;
    fn cardinality(&self) -> usize {
        self.size as usize
    }
    fn nth_element(&self, i: usize) -> AElem {
        self.decode(i as u32)
    }
    fn multiply(&self, a: &AElem, b: &AElem) -> AElem {
        self.mul(a, b)
    }
    fn is_zero(&self, a: &AElem) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &AElem) -> bool {
        *a == self.one()
    }
}
