//! Element literals, one syntax per ring family:
//!
//! - `Zmod(n)`: decimal integers, possibly negative (`5`, `-1`)
//! - `GF(p,e)`: little-endian hex coefficient digits (`01` is the generator)
//! - `TruncPoly(Zmod(n), k)` with `n <= 16`: little-endian hex digits in `t`;
//!   any `TruncPoly` also takes `[c0,c1,...]`
//! - `Product`: `(a,b)`
//! - `UT2`: `[a,b,c]` for the matrix with rows `(a b)` and `(0 c)`
//! - `GroupRing`: `[c_0,c_1,...]`, one coefficient per group element

use super::{join_blocks, split_blocks, Elem, FiniteRing, RingKind};
use crate::error::ParseError;

/// Splits `s` on commas that are not nested inside brackets, returning each
/// piece with its byte offset.
pub(crate) fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn trimmed(s: &str, offset: usize) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (offset + lead, s.trim())
}

fn bracketed(
    s: &str,
    offset: usize,
    open: char,
    close: char,
) -> Result<Vec<(usize, &str)>, ParseError> {
    if !(s.starts_with(open) && s.ends_with(close)) || s.len() < 2 {
        return Err(ParseError::new(
            offset,
            format!("expected a {open}...{close} literal"),
        ));
    }
    let inner = &s[1..s.len() - 1];
    Ok(split_top_level(inner)
        .into_iter()
        .map(|(o, piece)| (offset + 1 + o, piece))
        .collect())
}

fn hex_digits(s: &str, offset: usize, radix: u32, max_len: usize) -> Result<Vec<u32>, ParseError> {
    if s.is_empty() {
        return Err(ParseError::new(offset, "empty element literal"));
    }
    if s.len() > max_len {
        return Err(ParseError::new(
            offset,
            format!("literal {s:?} has more than {max_len} digits"),
        ));
    }
    s.chars()
        .enumerate()
        .map(|(i, c)| match c.to_digit(16) {
            Some(d) if d < radix => Ok(d),
            _ => Err(ParseError::new(
                offset + i,
                format!("digit {c:?} out of range for radix {radix}"),
            )),
        })
        .collect()
}

fn block_list(
    ring_base: &FiniteRing,
    pieces: Vec<(usize, &str)>,
    count: usize,
    offset: usize,
) -> Result<Vec<u32>, ParseError> {
    if pieces.len() > count {
        return Err(ParseError::new(
            offset,
            format!("expected at most {count} entries, found {}", pieces.len()),
        ));
    }
    let mut blocks = vec![0u32; count];
    for (slot, (o, piece)) in blocks.iter_mut().zip(pieces) {
        let (o, piece) = trimmed(piece, o);
        *slot = parse_element(ring_base, piece, o)?.0;
    }
    Ok(blocks)
}

pub fn parse_element(ring: &FiniteRing, text: &str, offset: usize) -> Result<Elem, ParseError> {
    let (offset, s) = trimmed(text, offset);
    if s.is_empty() {
        return Err(ParseError::new(offset, "empty element literal"));
    }
    match ring.kind() {
        RingKind::Zmod { n } => {
            let v: i64 = s.parse().map_err(|_| {
                ParseError::new(offset, format!("expected an integer, found {s:?}"))
            })?;
            Ok(Elem(v.rem_euclid(*n as i64) as u32))
        }
        RingKind::Gf { p, e, .. } => {
            let digits = hex_digits(s, offset, *p, *e as usize)?;
            Ok(Elem(join_blocks(&digits, *p)))
        }
        RingKind::Product(a, b) => {
            let pieces = bracketed(s, offset, '(', ')')?;
            if pieces.len() != 2 {
                return Err(ParseError::new(offset, "product literal needs two entries"));
            }
            let (oa, pa) = trimmed(pieces[0].1, pieces[0].0);
            let (ob, pb) = trimmed(pieces[1].1, pieces[1].0);
            let x = parse_element(a, pa, oa)?;
            let y = parse_element(b, pb, ob)?;
            Ok(Elem(x.0 + a.size() * y.0))
        }
        RingKind::UpperTriangular(base) => {
            let pieces = bracketed(s, offset, '[', ']')?;
            if pieces.len() != 3 {
                return Err(ParseError::new(
                    offset,
                    "UT2 literal needs three entries [a,b,c]",
                ));
            }
            let blocks = block_list(base, pieces, 3, offset)?;
            Ok(Elem(join_blocks(&blocks, base.size())))
        }
        RingKind::GroupRing { base, orders, .. } => {
            let g: u32 = orders.iter().product();
            let pieces = bracketed(s, offset, '[', ']')?;
            let blocks = block_list(base, pieces, g as usize, offset)?;
            Ok(Elem(join_blocks(&blocks, base.size())))
        }
        RingKind::TruncPoly { base, k } => {
            if s.starts_with('[') {
                let pieces = bracketed(s, offset, '[', ']')?;
                let blocks = block_list(base, pieces, *k as usize, offset)?;
                return Ok(Elem(join_blocks(&blocks, base.size())));
            }
            match base.kind() {
                RingKind::Zmod { n } if *n <= 16 => {
                    let digits = hex_digits(s, offset, *n, *k as usize)?;
                    Ok(Elem(join_blocks(&digits, *n)))
                }
                _ => Err(ParseError::new(
                    offset,
                    "expected a [c0,c1,...] literal for this TruncPoly",
                )),
            }
        }
    }
}

fn hex_string(digits: &[u32]) -> String {
    let mut end = digits.len();
    while end > 1 && digits[end - 1] == 0 {
        end -= 1;
    }
    digits[..end.max(1)]
        .iter()
        .map(|&d| std::char::from_digit(d, 16).unwrap_or('?'))
        .collect()
}

pub fn format_element(ring: &FiniteRing, a: Elem) -> String {
    let list = |base: &FiniteRing, count: usize| {
        let parts: Vec<String> = split_blocks(a.0, base.size(), count)
            .iter()
            .map(|&b| format_element(base, Elem(b)))
            .collect();
        format!("[{}]", parts.join(","))
    };
    match ring.kind() {
        RingKind::Zmod { .. } => a.0.to_string(),
        RingKind::Gf { p, e, .. } => hex_string(&split_blocks(a.0, *p, *e as usize)),
        RingKind::Product(x, y) => format!(
            "({},{})",
            format_element(x, Elem(a.0 % x.size())),
            format_element(y, Elem(a.0 / x.size()))
        ),
        RingKind::UpperTriangular(base) => list(base, 3),
        RingKind::GroupRing { base, orders, .. } => {
            list(base, orders.iter().product::<u32>() as usize)
        }
        RingKind::TruncPoly { base, k } => match base.kind() {
            RingKind::Zmod { n } if *n <= 16 => hex_string(&split_blocks(a.0, *n, *k as usize)),
            _ => list(base, *k as usize),
        },
    }
}
