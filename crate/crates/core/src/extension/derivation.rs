//! `B`-derivations of `A`, parameterized by their value at `x`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AElem, ASubset, Extension};
use crate::error::Result;
use crate::skew::{formal_derivative, TwistKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivationKind {
    General,
    Central,
}

/// A `B`-derivation `delta` of `A`, stored as `delta(x)`.
#[derive(Clone)]
pub struct DerivationA {
    ext: Arc<Extension>,
    value_at_x: AElem,
    kind: DerivationKind,
}

impl std::fmt::Debug for DerivationA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "DerivationA(x -> {}, {:?})",
            self.ext.format(&self.value_at_x),
            self.kind
        )
    }
}

/// `delta(x^j)` for `0 <= j <= m` from `delta(x^(j+1)) = delta(x^j) x + x^j g`.
fn values_on_powers(ext: &Extension, g: &AElem) -> Vec<AElem> {
    let mut out = Vec::with_capacity(ext.degree() + 1);
    let mut d = ext.zero();
    let mut xg = g.clone();
    for _ in 0..=ext.degree() {
        out.push(d.clone());
        d = ext.add(&ext.mul_x_right(&d), &xg);
        xg = ext.mul_x_left(&xg);
    }
    out
}

/// Lifting `X -> g` to a `B`-derivation of the skew polynomial ring needs
/// `g` in `J_rho`; it descends to `A` iff the lift sends `f` into `f R`,
/// i.e. `sum_j delta(x^j) a_j = 0` in `A`.
fn is_well_defined(ext: &Extension, g: &AElem) -> bool {
    if !ext.in_twisted_centralizer(g, 1) {
        return false;
    }
    let powers = values_on_powers(ext, g);
    let mut acc = ext.zero();
    for (j, d) in powers.iter().enumerate() {
        acc = ext.add(&acc, &ext.mul_base_right(d, ext.f_coeff(j)));
    }
    acc.is_zero()
}

impl DerivationA {
    /// `None` unless `x -> g` extends to a `B`-derivation of `A`.
    pub fn new(ext: &Arc<Extension>, g: AElem) -> Option<Self> {
        if !is_well_defined(ext, &g) {
            return None;
        }
        Some(Self::classified(ext, g))
    }

    /// `g` already known to give a derivation.
    fn classified(ext: &Arc<Extension>, g: AElem) -> Self {
        let mut d = DerivationA {
            ext: ext.clone(),
            value_at_x: g,
            kind: DerivationKind::General,
        };
        if is_central_derivation(&d) {
            d.kind = DerivationKind::Central;
        }
        d
    }

    pub fn extension(&self) -> &Arc<Extension> {
        &self.ext
    }

    pub fn value_at_x(&self) -> &AElem {
        &self.value_at_x
    }

    pub fn kind(&self) -> DerivationKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.value_at_x.is_zero()
    }

    /// `delta(x^j)` for `0 <= j <= m`.
    pub fn on_powers(&self) -> Vec<AElem> {
        values_on_powers(&self.ext, &self.value_at_x)
    }

    /// `delta(sum x^j c_j) = sum delta(x^j) c_j`.
    pub fn apply(&self, a: &AElem) -> AElem {
        self.apply_with(&self.on_powers(), a)
    }

    fn apply_with(&self, powers: &[AElem], a: &AElem) -> AElem {
        let ext = &self.ext;
        let mut acc = ext.zero();
        for (j, &c) in a.coeffs().iter().enumerate() {
            if c.0 != 0 {
                acc = ext.add(&acc, &ext.mul_base_right(&powers[j], c));
            }
        }
        acc
    }

    /// Leibniz rule and `delta(B) = 0`: every pair when `|A| <= 256`,
    /// otherwise additive generator pairs plus seeded random pairs.
    pub fn check_leibniz(&self) -> bool {
        let ext = &self.ext;
        let powers = self.on_powers();
        let holds = |a: &AElem, b: &AElem| {
            let lhs = self.apply_with(&powers, &ext.mul(a, b));
            let rhs = ext.add(
                &ext.mul(&self.apply_with(&powers, a), b),
                &ext.mul(a, &self.apply_with(&powers, b)),
            );
            lhs == rhs
        };
        let kills_base = ext
            .base()
            .elements()
            .all(|b| self.apply_with(&powers, &ext.embed(b)).is_zero());
        if !kills_base {
            return false;
        }
        if ext.size() <= 256 {
            let all: Vec<AElem> = ext.elements().collect();
            return all.iter().all(|a| all.iter().all(|b| holds(a, b)));
        }
        let gens = ext.additive_generators();
        if !gens.iter().all(|a| gens.iter().all(|b| holds(a, b))) {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
        (0..256).all(|_| {
            let a = ext.decode(rng.gen_range(0..ext.size()));
            let b = ext.decode(rng.gen_range(0..ext.size()));
            holds(&a, &b)
        })
    }
}

/// `delta(a) in C(A)` for all `a`; checked on the additive generators
/// `x^j e`, whose images `delta(x^j) e` span the image.
pub fn is_central_derivation(delta: &DerivationA) -> bool {
    let ext = &delta.ext;
    let powers = delta.on_powers();
    (0..ext.degree()).all(|j| {
        ext.base_generators()
            .iter()
            .all(|&e| ext.is_central(&ext.mul_base_right(&powers[j], e)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivationPath {
    /// every `g` for which `x -> g` lifts and descends
    General,
    /// `{g in J_rho : tau(g) = 0}`
    RhoLemma,
    /// `{g in V : tau(g) = 0}`
    DLemma,
    /// `{g : f'(x) g = 0}`
    PlainDerivative,
}

#[derive(Debug, Clone)]
pub struct DerivationSpace {
    /// sorted by the handle of `delta(x)`
    pub derivations: Vec<DerivationA>,
    /// candidate sets for `delta(x)` produced by each applicable route
    pub paths: Vec<(DerivationPath, ASubset)>,
    /// all routes produced the same set
    pub agreement: bool,
    /// both twists are non-trivial, so only the general route ran
    pub mixed: bool,
}

impl DerivationSpace {
    pub fn values(&self) -> ASubset {
        self.paths[0].1.clone()
    }

    pub fn path(&self, p: DerivationPath) -> Option<&ASubset> {
        self.paths.iter().find(|(q, _)| *q == p).map(|(_, s)| s)
    }
}

pub fn derivation_space(ext: &Arc<Extension>) -> Result<DerivationSpace> {
    let j_rho = ext.twisted_centralizer(1);
    let general = ASubset::from_sorted(
        ext.subset_elements(&j_rho)
            .filter(|g| is_well_defined(ext, g))
            .map(|g| ext.handle(&g))
            .collect(),
    );
    let mut paths = vec![(DerivationPath::General, general.clone())];
    if ext.rho_tilde_defined() && ext.degree() >= 2 {
        let set = ASubset::from_sorted(
            ext.subset_elements(&j_rho)
                .filter(|g| ext.tau_rho_unchecked(g).is_zero())
                .map(|g| ext.handle(&g))
                .collect(),
        );
        paths.push((DerivationPath::RhoLemma, set));
    }
    if ext.p_polynomial().is_some() && ext.d_tilde_defined() {
        let v = ext.centralizer();
        let set = ASubset::from_sorted(
            ext.subset_elements(&v)
                .filter(|g| ext.tau_d_unchecked(g).is_zero())
                .map(|g| ext.handle(&g))
                .collect(),
        );
        paths.push((DerivationPath::DLemma, set));
    }
    if ext.kind() == TwistKind::Plain && ext.base().is_commutative() {
        let df = ext.from_polynomial(&formal_derivative(ext.poly())?)?;
        let set = ASubset::from_sorted(
            ext.elements()
                .filter(|g| ext.mul(&df, g).is_zero())
                .map(|g| ext.handle(&g))
                .collect(),
        );
        paths.push((DerivationPath::PlainDerivative, set));
    }
    let agreement = paths.iter().all(|(_, s)| *s == general);
    let derivations = general
        .iter()
        .map(|h| DerivationA::classified(ext, ext.decode(h.0)))
        .collect();
    Ok(DerivationSpace {
        derivations,
        paths,
        agreement,
        mixed: ext.kind() == TwistKind::Mixed,
    })
}

#[derive(Debug, Clone)]
pub struct InnerValues {
    /// `{h x - x h : h in V}`
    pub values: ASubset,
    /// `{x (rho~(h) - h) : h in V}` equals `values`, when `rho~` exists
    pub rho_form_agrees: Option<bool>,
    /// `D~(V)` equals `values`, when `D~` exists
    pub d_form_agrees: Option<bool>,
}

pub fn inner_values(ext: &Extension) -> InnerValues {
    let v = ext.centralizer();
    let values = ext.image_of(&v, |h| ext.sub(&ext.mul_x_right(h), &ext.mul_x_left(h)));
    let rho_form_agrees = ext
        .rho_tilde_defined()
        .then(|| ext.image_of(&v, |h| ext.mul_x_left(&ext.sub(&ext.rho_tilde(h), h))) == values);
    let d_form_agrees = ext
        .d_tilde_defined()
        .then(|| ext.image_of(&v, |h| ext.d_tilde(h)) == values);
    InnerValues {
        values,
        rho_form_agrees,
        d_form_agrees,
    }
}
