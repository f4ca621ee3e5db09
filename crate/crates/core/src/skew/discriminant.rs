//! Formal derivative, Sylvester resultant and discriminant over commutative `B`.

use super::SkewPolynomial;
use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

fn require_plain_commutative(f: &SkewPolynomial) -> Result<()> {
    if !f.context().is_plain() {
        return Err(Error::Precondition(
            "needs the untwisted polynomial ring".into(),
        ));
    }
    if !f.ring().is_commutative() {
        return Err(Error::Precondition(
            "needs a commutative coefficient ring".into(),
        ));
    }
    Ok(())
}

/// `f' = sum_j X^(j-1) (j a_j)`.
pub fn formal_derivative(f: &SkewPolynomial) -> Result<SkewPolynomial> {
    require_plain_commutative(f)?;
    let ring = f.ring();
    let coeffs = (1..f.coeffs().len())
        .map(|j| ring.scale(j as i64, f.coeff(j)))
        .collect();
    Ok(SkewPolynomial::new(f.context(), coeffs))
}

/// Sylvester matrix of `f` (degree `m`) and `g` read at formal degree `n`.
pub fn sylvester_matrix(
    ring: &FiniteRing,
    f: &[Elem],
    m: usize,
    g: &[Elem],
    n: usize,
) -> Vec<Vec<Elem>> {
    let size = m + n;
    let at = |v: &[Elem], k: usize| v.get(k).copied().unwrap_or(ring.zero());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![ring.zero(); size];
        for k in 0..=m {
            row[i + k] = at(f, m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![ring.zero(); size];
        for k in 0..=n {
            row[i + k] = at(g, n - k);
        }
        rows.push(row);
    }
    rows
}

/// Division-free determinant over a commutative ring: Laplace expansion
/// along rows, memoized on the set of columns still available.
pub fn determinant(ring: &FiniteRing, matrix: &[Vec<Elem>]) -> Elem {
    let n = matrix.len();
    if n == 0 {
        return ring.one();
    }
    assert!(n <= 20, "determinant of a {n}x{n} matrix");
    let full = (1usize << n) - 1;
    // memo[mask] = det of rows (n - |mask|).. restricted to columns in mask
    let mut memo: Vec<Option<Elem>> = vec![None; full + 1];
    memo[0] = Some(ring.one());
    fn go(ring: &FiniteRing, m: &[Vec<Elem>], mask: usize, memo: &mut Vec<Option<Elem>>) -> Elem {
        if let Some(v) = memo[mask] {
            return v;
        }
        let n = m.len();
        let row = n - mask.count_ones() as usize;
        let mut acc = ring.zero();
        let mut position = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = m[row][c];
            if entry.0 != 0 {
                let minor = go(ring, m, mask & !(1 << c), memo);
                let term = ring.mul(entry, minor);
                acc = if position % 2 == 0 {
                    ring.add(acc, term)
                } else {
                    ring.sub(acc, term)
                };
            }
            position += 1;
        }
        memo[mask] = Some(acc);
        acc
    }
    go(ring, matrix, full, &mut memo)
}

/// `(-1)^(m(m-1)/2) Res(f, f')` for monic `f` of degree `m`, with `f'` taken
/// at formal degree `m - 1`. Degree one gives `1`.
pub fn discriminant(f: &SkewPolynomial) -> Result<Elem> {
    require_plain_commutative(f)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let ring = f.ring();
    let m = f.degree().unwrap_or(0);
    if m == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if m == 1 {
        return Ok(ring.one());
    }
    let df = formal_derivative(f)?;
    let matrix = sylvester_matrix(ring, f.coeffs(), m, df.coeffs(), m - 1);
    let res = determinant(ring, &matrix);
    Ok(if (m * (m - 1) / 2) % 2 == 1 {
        ring.neg(res)
    } else {
        res
    })
}
