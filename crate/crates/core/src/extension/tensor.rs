//! `(A (x)_B A)^A` for commutative `B` and untwisted `f`.
//!
//! `A (x)_B A` is free over `B` on `x^i (x) x^j`; a tensor is the `m x m`
//! coefficient matrix `C` with `C[i][j]` on `x^i (x) x^j`.

use serde::Serialize;

use super::{AElem, Extension};
use crate::error::{Error, Result};
use crate::ring::{Elem, MAX_CARRIER};
use crate::skew::TwistKind;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElem {
    m: usize,
    /// row-major `C[i][j]`
    coeffs: Vec<Elem>,
}

impl TensorElem {
    pub fn zero(m: usize) -> Self {
        TensorElem {
            m,
            coeffs: vec![Elem(0); m * m],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coeffs[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Elem) {
        self.coeffs[i * self.m + j] = c;
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralizerMethod {
    /// every tensor tested
    FullScan,
    /// kernel size from the image of `mu -> x mu - mu x`
    Structured,
}

#[derive(Debug, Clone)]
pub struct TensorCentralizer {
    pub method: CentralizerMethod,
    /// `|(A (x)_B A)^A|`
    pub size: u128,
    /// `sum_j y_j h (x) x^j` for each `h`, in handle order of `h`
    pub parameterized: Vec<TensorElem>,
    /// the parameterized family is exactly the centralizer
    pub matches_parameterization: bool,
}

fn require_setting(ext: &Extension) -> Result<()> {
    if ext.kind() != TwistKind::Plain || !ext.base().is_commutative() {
        return Err(Error::Precondition(
            "tensor centralizer needs commutative B and the untwisted polynomial ring".into(),
        ));
    }
    Ok(())
}

/// Matrix of left multiplication by `x` on the basis `x^i`: column `i` is `x * x^i`.
fn x_matrix(ext: &Extension) -> Vec<AElem> {
    (0..ext.degree())
        .map(|i| ext.mul_x_left(&ext.x_pow(i)))
        .collect()
}

/// `x mu - mu x`. With `M` the matrix of `x`, `x mu = M C` and `mu x = C M^T`.
fn commutator(ext: &Extension, xm: &[AElem], t: &TensorElem) -> TensorElem {
    let b = ext.base();
    let m = t.m;
    let mut out = TensorElem::zero(m);
    for i in 0..m {
        for j in 0..m {
            let c = t.get(i, j);
            if c.0 == 0 {
                continue;
            }
            // x^(i) c (x) x^j -> (x x^i) c (x) x^j  minus  x^i c (x) x x^j
            for k in 0..m {
                let l = xm[i].coeffs()[k];
                let r = xm[j].coeffs()[k];
                let a = &mut out.coeffs[k * m + j];
                *a = b.add(*a, b.mul(l, c));
                let s = &mut out.coeffs[i * m + k];
                *s = b.sub(*s, b.mul(r, c));
            }
        }
    }
    out
}

/// `x mu = mu x`.
pub fn is_in_tensor_centralizer(ext: &Extension, t: &TensorElem) -> bool {
    commutator(ext, &x_matrix(ext), t)
        .coeffs
        .iter()
        .all(|c| c.0 == 0)
}

/// `sum C[i][j] x^i x^j`, the image under multiplication.
pub fn tensor_trace(ext: &Extension, t: &TensorElem) -> AElem {
    trace_with(ext, &x_powers(ext, t.m), t)
}

fn x_powers(ext: &Extension, m: usize) -> Vec<AElem> {
    let mut out = vec![ext.one()];
    for k in 1..(2 * m).saturating_sub(1) {
        out.push(ext.mul_x_left(&out[k - 1]));
    }
    out
}

fn trace_with(ext: &Extension, powers: &[AElem], t: &TensorElem) -> AElem {
    let mut acc = ext.zero();
    for i in 0..t.m {
        for j in 0..t.m {
            let c = t.get(i, j);
            if c.0 != 0 {
                acc = ext.add(&acc, &ext.mul_base_right(&powers[i + j], c));
            }
        }
    }
    acc
}

/// `sum_j y_j h (x) x^j`.
fn parameterize(ext: &Extension, ys: &[AElem], h: &AElem) -> TensorElem {
    let m = ext.degree();
    let mut t = TensorElem::zero(m);
    for (j, y) in ys.iter().enumerate().take(m) {
        let col = ext.mul(y, h);
        for (i, &c) in col.coeffs().iter().enumerate() {
            t.coeffs[i * m + j] = c;
        }
    }
    t
}

/// Order of the subgroup of `Z/r_0 + ... + Z/r_(n-1)` generated by `gens`.
///
/// Row-reduces the lattice spanned by `gens` and the relations `r_k e_k`
/// column by column; the pivots multiply to the index of that lattice.
pub fn subgroup_order(radices: &[u32], gens: &[Vec<u32>]) -> u128 {
    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
            (g, t, s - (a.div_euclid(b)) * t)
        }
    }
    let n = radices.len();
    let reduce = |v: &mut Vec<i64>, from: usize| {
        for c in from..n {
            v[c] = v[c].rem_euclid(radices[c] as i64);
        }
    };
    let mut rows: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            let mut v: Vec<i64> = g.iter().map(|&d| d as i64).collect();
            reduce(&mut v, 0);
            v
        })
        .collect();
    let mut index: u128 = 1;
    for k in 0..n {
        let r = radices[k] as i64;
        let mut pivot = vec![0i64; n];
        pivot[k] = r;
        let mut rest = Vec::with_capacity(rows.len());
        for mut v in rows.drain(..) {
            if v[k] != 0 {
                let (g, s, t) = ext_gcd(pivot[k], v[k]);
                let (a, b) = (pivot[k] / g, v[k] / g);
                let mut next: Vec<i64> = (0..n).map(|c| s * pivot[c] + t * v[c]).collect();
                for c in 0..n {
                    v[c] = a * v[c] - b * pivot[c];
                }
                debug_assert_eq!(v[k], 0);
                next[k] = g.abs();
                reduce(&mut next, k + 1);
                reduce(&mut v, k + 1);
                pivot = next;
            }
            if v.iter().any(|&d| d != 0) {
                rest.push(v);
            }
        }
        index *= pivot[k] as u128;
        rows = rest;
    }
    let total: u128 = radices.iter().map(|&r| r as u128).product();
    total / index
}

pub fn tensor_centralizer(ext: &Extension) -> Result<TensorCentralizer> {
    let total = (ext.base().size() as u128).pow((ext.degree() * ext.degree()) as u32);
    centralizer_by(ext, total > MAX_CARRIER)
}

pub(crate) fn centralizer_by(ext: &Extension, structured: bool) -> Result<TensorCentralizer> {
    require_setting(ext)?;
    let m = ext.degree();
    let b = ext.base();
    let xm = x_matrix(ext);
    let ys: Vec<AElem> = (0..m).map(|j| ext.y(j)).collect();
    let parameterized: Vec<TensorElem> =
        ext.elements().map(|h| parameterize(ext, &ys, &h)).collect();
    // h -> sum_j y_j h (x) x^j and the commutator are additive, so commuting
    // is checked on generators and injectivity on the zero fibre
    let all_commute = ext.additive_generators().iter().all(|h| {
        commutator(ext, &xm, &parameterize(ext, &ys, h))
            .coeffs
            .iter()
            .all(|c| c.0 == 0)
    });
    let injective = parameterized
        .iter()
        .skip(1)
        .all(|t| t.coeffs.iter().any(|c| c.0 != 0));
    let family = parameterized.len() as u128;
    let total = (b.size() as u128).pow((m * m) as u32);
    let (method, size, exact) = if !structured {
        let mut kernel = 0u128;
        for idx in 0..total as u64 {
            let mut rest = idx;
            let coeffs = (0..m * m)
                .map(|_| {
                    let c = Elem((rest % b.size() as u64) as u32);
                    rest /= b.size() as u64;
                    c
                })
                .collect();
            let t = TensorElem { m, coeffs };
            if commutator(ext, &xm, &t).coeffs.iter().all(|c| c.0 == 0) {
                kernel += 1;
            }
        }
        (CentralizerMethod::FullScan, kernel, kernel == family)
    } else {
        // the commutator is B-linear, so its image is generated by the
        // images of e (x^i (x) x^j) with e an additive generator of B
        let radices: Vec<u32> = (0..m * m)
            .flat_map(|_| b.radices().iter().copied())
            .collect();
        let mut gens = Vec::new();
        for pos in 0..m * m {
            for &e in ext.base_generators() {
                let mut t = TensorElem::zero(m);
                t.coeffs[pos] = e;
                let img = commutator(ext, &xm, &t);
                gens.push(img.coeffs.iter().flat_map(|&c| b.digits(c)).collect());
            }
        }
        let image = subgroup_order(&radices, &gens);
        let size = total / image;
        (CentralizerMethod::Structured, size, size == family)
    };
    Ok(TensorCentralizer {
        method,
        size,
        // an injective family inside the kernel with the kernel's size is the kernel
        matches_parameterization: exact && all_commute && injective,
        parameterized,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CasimirOutcome {
    /// a centralizer element, given by its `h`, whose trace is a non-zero-divisor
    WeaklySeparable(AElem),
    /// no such element; this is not a negative verdict
    Inconclusive,
}

/// Searches the centralizer for an element whose trace is a non-zero-divisor.
pub fn casimir_weak_separability(
    ext: &Extension,
    tc: &TensorCentralizer,
) -> Result<CasimirOutcome> {
    require_setting(ext)?;
    // annihilators found so far are tried first on later traces
    let mut annihilators: Vec<AElem> = Vec::new();
    let powers = x_powers(ext, ext.degree());
    for (idx, t) in tc.parameterized.iter().enumerate() {
        let trace = trace_with(ext, &powers, t);
        if trace.is_zero() {
            continue;
        }
        if annihilators.iter().any(|z| ext.mul(&trace, z).is_zero()) {
            continue;
        }
        match ext
            .elements()
            .skip(1)
            .find(|z| ext.mul(&trace, z).is_zero())
        {
            Some(z) => annihilators.push(z),
            None => return Ok(CasimirOutcome::WeaklySeparable(ext.decode(idx as u32))),
        }
    }
    Ok(CasimirOutcome::Inconclusive)
}

/// An `h` whose centralizer element has trace one (a separability idempotent).
pub fn casimir_separability(ext: &Extension, tc: &TensorCentralizer) -> Result<Option<AElem>> {
    require_setting(ext)?;
    let one = ext.one();
    let powers = x_powers(ext, ext.degree());
    Ok(tc
        .parameterized
        .iter()
        .position(|t| trace_with(ext, &powers, t) == one)
        .map(|idx| ext.decode(idx as u32)))
}
