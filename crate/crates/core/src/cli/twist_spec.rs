//! The twist mini-language.
//!
//! Automorphisms: `identity`, `frobenius`, `swap`, `map:{g->i,...}`.
//! Derivations: `zero`, `ddt`, `ddt:<u>`, `inner:<element>`, `map:{g->i,...}`.
//! A map lists the image of every additive generator of the ring.

use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::ring::literal::parse_element;
use crate::ring::{
    inner_twist_derivation, ring_from_str, Elem, FiniteRing, RingAutomorphism, TwistDerivation,
};
use crate::skew::TwistContext;

/// Splits `s` at commas outside brackets and parentheses, keeping offsets.
fn split_top_level(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((offset + start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((offset + start, &s[start..]));
    out
}

/// Images of the additive generators from `{g->i,...}`; offsets count from
/// the start of the whole twist argument.
fn parse_map(ring: &FiniteRing, body: &str, offset: usize) -> Result<Vec<Elem>> {
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| ParseError::new(offset, "expected {gen->image,...}"))?;
    let gens = ring.additive_generators();
    let mut images: Vec<Option<Elem>> = vec![None; gens.len()];
    for (o, entry) in split_top_level(inner, offset + 1) {
        if entry.trim().is_empty() {
            continue;
        }
        let arrow = entry
            .find("->")
            .ok_or_else(|| ParseError::new(o, "expected gen->image"))?;
        let g = parse_element(ring, &entry[..arrow], o)?;
        let img = parse_element(ring, &entry[arrow + 2..], o + arrow + 2)?;
        let idx = gens.iter().position(|&x| x == g).ok_or_else(|| {
            ParseError::new(
                o,
                format!("{} is not an additive generator", ring.format_element(g)),
            )
        })?;
        if images[idx].replace(img).is_some() {
            return Err(ParseError::new(o, "generator listed twice").into());
        }
    }
    images
        .into_iter()
        .zip(&gens)
        .map(|(img, &g)| {
            img.ok_or_else(|| {
                ParseError::new(
                    offset,
                    format!("missing image of generator {}", ring.format_element(g)),
                )
                .into()
            })
        })
        .collect()
}

fn parse_auto(ring: &Arc<FiniteRing>, spec: &str) -> Result<RingAutomorphism> {
    match spec.trim() {
        "identity" | "" => Ok(RingAutomorphism::identity(ring)),
        "frobenius" => RingAutomorphism::frobenius(ring),
        "swap" => RingAutomorphism::swap(ring),
        s => match s.strip_prefix("map:") {
            Some(body) => RingAutomorphism::from_generator_images(ring, &parse_map(ring, body, 4)?),
            None => Err(ParseError::new(0, format!("unknown automorphism {s:?}")).into()),
        },
    }
}

fn parse_deriv(rho: &RingAutomorphism, spec: &str) -> Result<TwistDerivation> {
    let ring = rho.ring();
    let require_identity = |what: &str| {
        if rho.is_identity() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs the identity automorphism"
            )))
        }
    };
    match spec.trim() {
        "zero" | "" => Ok(TwistDerivation::zero(rho)),
        "ddt" => {
            require_identity("ddt")?;
            TwistDerivation::derivative(ring, ring.one())
        }
        s => {
            if let Some(u) = s.strip_prefix("ddt:") {
                require_identity("ddt")?;
                let u = parse_element(ring, u, 4)?;
                TwistDerivation::derivative(ring, u)
            } else if let Some(m) = s.strip_prefix("inner:") {
                let m = parse_element(ring, m, 6)?;
                Ok(inner_twist_derivation(m, rho))
            } else if let Some(body) = s.strip_prefix("map:") {
                TwistDerivation::from_generator_images(rho, &parse_map(ring, body, 4)?)
            } else {
                Err(ParseError::new(0, format!("unknown derivation {s:?}")).into())
            }
        }
    }
}

/// Builds a validated twist context; the label records the twist as given.
pub fn build_context(ring: &str, auto: &str, deriv: &str) -> Result<Arc<TwistContext>> {
    let r = ring_from_str(ring)?;
    let rho = parse_auto(&r, auto)?;
    let d = parse_deriv(&rho, deriv)?;
    let auto = auto.trim();
    let deriv = deriv.trim();
    let auto_named = !(auto.is_empty() || auto == "identity");
    let deriv_named = !(deriv.is_empty() || deriv == "zero");
    let label = match (auto_named, deriv_named) {
        (false, false) => "identity".to_string(),
        (true, false) => auto.to_string(),
        (false, true) => deriv.to_string(),
        (true, true) => format!("{auto};{deriv}"),
    };
    Ok(TwistContext::with_label(d, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::TwistKind;

    #[test]
    fn named_twists() {
        let c = build_context("GF(2,2)", "frobenius", "zero").unwrap();
        assert_eq!(c.kind(), TwistKind::Automorphism);
        assert_eq!(c.label(), "frobenius");
        let c = build_context("Zmod(5)", "identity", "zero").unwrap();
        assert_eq!(c.label(), "identity");
        let c = build_context("TruncPoly(Zmod(2),2)", "identity", "ddt").unwrap();
        assert_eq!(c.kind(), TwistKind::Derivation);
        let c = build_context("UT2(Zmod(2))", "identity", "inner:[0,1,0]").unwrap();
        assert_eq!(c.label(), "inner:[0,1,0]");
        assert!(!c.d().is_zero());
        let c = build_context("Product(Zmod(3),Zmod(3))", "swap", "").unwrap();
        assert_eq!(c.rho().order(), 2);
    }

    #[test]
    fn map_twist_matches_frobenius() {
        // GF(4) has additive generators 1 and w; Frobenius sends w to w + 1
        let c = build_context("GF(2,2)", "map:{1->1, 01->11}", "zero").unwrap();
        let f = RingAutomorphism::frobenius(c.ring()).unwrap();
        assert_eq!(c.rho(), &f);
    }

    #[test]
    fn invalid_twists_are_rejected() {
        assert!(build_context("Zmod(5)", "frobenius", "zero").is_err());
        // d/dt on TruncPoly(Z/2,3): D(t * t^2) = 0 but D(t) t^2 + t D(t^2) = t^2
        assert!(matches!(
            build_context("TruncPoly(Zmod(2),3)", "identity", "ddt"),
            Err(Error::Twist(_))
        ));
        assert!(build_context("GF(2,2)", "frobenius", "ddt").is_err());
        let e = build_context("GF(2,2)", "map:{1->1}", "zero").unwrap_err();
        assert!(e.to_string().contains("missing image"), "{e}");
        let e = build_context("GF(2,2)", "map:{1->1, 01->q}", "zero").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!(p.offset, 15),
            other => panic!("{other:?}"),
        }
    }
}
