//! Text form of skew polynomials: `X^3 + X*2 + 5`.
//!
//! A term is `X^k*c` (right coefficient), `c*X^k` (left coefficient,
//! normalized on parsing), `X^k`, `X`, or a constant `c`.

use std::sync::Arc;

use super::{SkewPolynomial, TwistContext};
use crate::error::{ParseError, Result};
use crate::ring::{literal, Elem};

/// Splits on top-level `+`/`-`; a sign directly after `*` or `^` belongs to
/// the literal that follows.
fn split_terms(s: &str) -> Vec<(usize, bool, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut start: Option<usize> = None;
    let mut prev = '+';
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        let is_sign = (c == '+' || c == '-') && depth == 0 && prev != '*' && prev != '^';
        if is_sign {
            if let Some(st) = start.take() {
                out.push((st, negative, &s[st..i]));
                negative = false;
            }
            if c == '-' {
                negative = !negative;
            }
            prev = c;
        } else if !c.is_whitespace() {
            if start.is_none() {
                start = Some(i);
            }
            prev = c;
        }
    }
    if let Some(st) = start {
        out.push((st, negative, &s[st..]));
    }
    out
}

fn parse_power(s: &str, offset: usize) -> std::result::Result<usize, ParseError> {
    // s starts right after the X
    let rest = s.trim_start();
    let Some(exp) = rest.strip_prefix('^') else {
        return if rest.is_empty() {
            Ok(1)
        } else {
            Err(ParseError::new(
                offset,
                format!("unexpected {rest:?} after X"),
            ))
        };
    };
    exp.trim()
        .parse::<usize>()
        .map_err(|_| ParseError::new(offset, format!("bad exponent {:?}", exp.trim())))
}

pub fn parse_polynomial(ctx: &Arc<TwistContext>, text: &str) -> Result<SkewPolynomial> {
    let ring = ctx.ring();
    let terms = split_terms(text);
    if terms.is_empty() {
        return Err(ParseError::new(0, "empty polynomial").into());
    }
    let mut acc = SkewPolynomial::zero(ctx);
    for (offset, negative, raw) in terms {
        let term = raw.trim_end();
        let pieces: Vec<&str> = term.splitn(2, '*').collect();
        let (x_part, coeff_part, left) = match pieces.as_slice() {
            [one] if one.trim_start().starts_with('X') => (Some(*one), None, false),
            [one] => (None, Some((offset, *one)), false),
            [a, b] if a.trim_start().starts_with('X') => {
                (Some(*a), Some((offset + a.len() + 1, *b)), false)
            }
            [a, b] if b.trim_start().starts_with('X') => (Some(*b), Some((offset, *a)), true),
            _ => {
                return Err(ParseError::new(offset, format!("cannot read term {term:?}")).into());
            }
        };
        let power = match x_part {
            Some(x) => {
                let x = x.trim();
                parse_power(&x[1..], offset)?
            }
            None => 0,
        };
        let c = match coeff_part {
            Some((o, lit)) => literal::parse_element(ring, lit, o)?,
            None => ring.one(),
        };
        let c = if negative { ring.neg(c) } else { c };
        let t = if left {
            super::coefficient_pass(ctx, c, power)
        } else {
            SkewPolynomial::monomial(ctx, power, c)
        };
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

pub(super) fn format_polynomial(f: &SkewPolynomial) -> String {
    let ring = f.ring();
    if f.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (j, &c) in f.coeffs().iter().enumerate().rev() {
        if c == Elem(0) {
            continue;
        }
        let lit = ring.format_element(c);
        let x = match j {
            0 => None,
            1 => Some("X".to_string()),
            _ => Some(format!("X^{j}")),
        };
        parts.push(match x {
            None => lit,
            Some(x) if c == ring.one() => x,
            Some(x) => format!("{x}*{lit}"),
        });
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ring::{ring_from_str, RingAutomorphism, TwistDerivation};
    use crate::skew::monic_polynomials;

    #[test]
    fn parses_simple_forms() {
        let r = ring_from_str("Zmod(7)").unwrap();
        let ctx = TwistContext::plain(&r);
        let f = parse_polynomial(&ctx, "X^3 + X*2 + 5").unwrap();
        assert_eq!(f.coeffs(), &[Elem(5), Elem(2), Elem(0), Elem(1)]);
        let g = parse_polynomial(&ctx, "X^2 - 1").unwrap();
        assert_eq!(g.coeffs(), &[Elem(6), Elem(0), Elem(1)]);
        let h = parse_polynomial(&ctx, "X^2 + X*-1 + -2").unwrap();
        assert_eq!(h.coeffs(), &[Elem(5), Elem(6), Elem(1)]);
        let k = parse_polynomial(&ctx, " X ").unwrap();
        assert_eq!(k, SkewPolynomial::x(&ctx));
        assert_eq!(format!("{f}"), "X^3 + X*2 + 5");
    }

    #[test]
    fn left_coefficients_pass_through_x() {
        let r = ring_from_str("GF(2,2)").unwrap();
        let rho = RingAutomorphism::frobenius(&r).unwrap();
        let ctx = TwistContext::new(TwistDerivation::zero(&rho));
        let f = parse_polynomial(&ctx, "01*X").unwrap();
        assert_eq!(format!("{f}"), "X*11");
    }

    #[test]
    fn round_trip_over_structured_rings() {
        for spec in ["Product(Zmod(2),Zmod(3))", "UT2(Zmod(2))", "GF(3,2)"] {
            let r = ring_from_str(spec).unwrap();
            let ctx = TwistContext::plain(&r);
            for f in monic_polynomials(&ctx, 2).take(200) {
                let text = f.to_string();
                assert_eq!(parse_polynomial(&ctx, &text).unwrap(), f, "{spec}: {text}");
            }
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring_from_str("Zmod(7)").unwrap();
        let ctx = TwistContext::plain(&r);
        match parse_polynomial(&ctx, "X^2 + X*q") {
            Err(Error::Parse(e)) => assert_eq!(e.offset, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&ctx, "").is_err());
        assert!(parse_polynomial(&ctx, "X^a").is_err());
    }
}
