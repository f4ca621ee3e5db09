//! Dense polynomials over Z/p, just enough to pick and check GF moduli.

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` (little-endian, mod p).
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
    trim(r)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Irreducibility of a monic polynomial over Z/p by trial division with every
/// monic polynomial of degree at most half its degree.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if rem_monic(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `e` over Z/p,
/// comparing coefficient tuples `(a_0, a_1, ..., a_{e-1})` from the constant
/// term upward.
pub(crate) fn default_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let e = e as usize;
    let count = (p as u64).checked_pow(e as u32)?;
    (0..count).find_map(|idx| {
        // a_0 is the most significant digit of idx
        let mut coeffs = vec![0u32; e + 1];
        let mut rest = idx;
        for j in (0..e).rev() {
            coeffs[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[e] = 1;
        is_irreducible(&coeffs, p).then_some(coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn gf4_modulus_by_root_scan() {
        // x^2+x+1 has no root in Z/2, so (degree 2) it is irreducible
        let m = [1, 1, 1];
        let roots = (0..2u32).filter(|&r| (1 + r + r * r) % 2 == 0).count();
        assert_eq!(roots, 0);
        assert!(is_irreducible(&m, 2));
        assert_eq!(default_modulus(2, 2).unwrap(), m.to_vec());
    }

    #[test]
    fn default_moduli_are_lexicographically_smallest() {
        // 1 + x^2 + x^3 beats 1 + x + x^3 because a_1 = 0 < 1
        assert_eq!(default_modulus(2, 3).unwrap(), vec![1, 0, 1, 1]);
        // x^2 + 1 has no root mod 3
        assert_eq!(default_modulus(3, 2).unwrap(), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 3));
    }

    #[test]
    fn remainder_reduces_degree() {
        // x^3 mod (x^2+x+1) over Z/2 = 1
        assert_eq!(rem_monic(&[0, 0, 0, 1], &[1, 1, 1], 2), vec![1]);
        assert_eq!(mul(&[1, 1], &[1, 1], 2), vec![1, 0, 1]);
    }
}
