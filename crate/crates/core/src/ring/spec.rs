//! Ring-spec DSL: `Zmod(4)`, `GF(2,2,111)`, `Product(Zmod(3), Zmod(3))`,
//! `GroupRing(Zmod(2), Cyclic(2)xCyclic(3))`, `UT2(Zmod(2))`,
//! `TruncPoly(Zmod(2), 2)`.
//!
//! Whitespace is ignored everywhere; constructor names are case-sensitive.

use std::fmt;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u32),
    /// `modulus` holds little-endian coefficients including the leading one.
    Gf {
        p: u32,
        e: u32,
        modulus: Option<Vec<u32>>,
    },
    Product(Box<RingSpec>, Box<RingSpec>),
    /// Group ring over a product of cyclic groups with the given orders.
    GroupRing(Box<RingSpec>, Vec<u32>),
    UpperTriangular(Box<RingSpec>),
    /// `base[t]/(t^k)`
    TruncPoly(Box<RingSpec>, u32),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Zmod({n})"),
            RingSpec::Gf {
                p,
                e,
                modulus: None,
            } => write!(f, "GF({p},{e})"),
            RingSpec::Gf {
                p,
                e,
                modulus: Some(m),
            } => {
                write!(f, "GF({p},{e},")?;
                for c in m {
                    write!(f, "{}", std::char::from_digit(*c, 16).unwrap_or('?'))?;
                }
                write!(f, ")")
            }
            RingSpec::Product(a, b) => write!(f, "Product({a}, {b})"),
            RingSpec::GroupRing(b, orders) => {
                write!(f, "GroupRing({b}, ")?;
                for (i, n) in orders.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "Cyclic({n})")?;
                }
                write!(f, ")")
            }
            RingSpec::UpperTriangular(b) => write!(f, "UT2({b})"),
            RingSpec::TruncPoly(b, k) => write!(f, "TruncPoly({b}, {k})"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ring_spec(s)
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut p = Parser::new(text);
    if p.peek().is_none() {
        return Err(ParseError::new(0, "empty ring spec"));
    }
    let spec = p.spec()?;
    if let Some((off, c)) = p.peek() {
        return Err(ParseError::new(off, format!("unexpected trailing {c:?}")));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.src[self.pos..].chars().next().map(|c| (self.pos, c))
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some((off, c)) => Err(ParseError::new(
                off,
                format!("expected {want:?}, found {c:?}"),
            )),
            None => Err(ParseError::new(
                self.pos,
                format!("expected {want:?}, found end of input"),
            )),
        }
    }

    /// Consumes a `)` closing an argument list of `name`, reporting extra
    /// arguments as an arity mismatch.
    fn close(&mut self, name: &str, arity: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some((off, ',')) => Err(ParseError::new(
                off,
                format!("arity mismatch: {name} takes {arity}"),
            )),
            _ => self.expect(')'),
        }
    }

    /// Consumes a `,` separating arguments of `name`.
    fn comma(&mut self, name: &str, arity: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some((off, ')')) => Err(ParseError::new(
                off,
                format!("arity mismatch: {name} takes {arity}"),
            )),
            _ => self.expect(','),
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (start, &self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(ParseError::new(start, "expected an integer"));
        }
        digits
            .parse()
            .map_err(|_| ParseError::new(start, format!("integer {digits} out of range")))
    }

    fn spec(&mut self) -> Result<RingSpec, ParseError> {
        let (off, name) = self.word();
        if name.is_empty() {
            return Err(ParseError::new(off, "expected a ring constructor"));
        }
        self.expect('(')?;
        let spec = match name {
            "Zmod" => {
                let n = self.int()?;
                self.close(name, "1 argument")?;
                RingSpec::Zmod(n)
            }
            "GF" => {
                let arity = "2 or 3 arguments";
                let p = self.int()?;
                self.comma(name, arity)?;
                let e = self.int()?;
                let modulus = match self.peek() {
                    Some((_, ',')) => {
                        self.pos += 1;
                        let (moff, digits) = self.word();
                        if digits.is_empty() {
                            return Err(ParseError::new(moff, "expected modulus digits"));
                        }
                        let coeffs = digits
                            .chars()
                            .enumerate()
                            .map(|(i, c)| {
                                c.to_digit(16).ok_or_else(|| {
                                    ParseError::new(moff + i, format!("bad modulus digit {c:?}"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Some(coeffs)
                    }
                    _ => None,
                };
                self.close(name, arity)?;
                RingSpec::Gf { p, e, modulus }
            }
            "Product" => {
                let a = self.spec()?;
                self.comma(name, "2 arguments")?;
                let b = self.spec()?;
                self.close(name, "2 arguments")?;
                RingSpec::Product(Box::new(a), Box::new(b))
            }
            "GroupRing" => {
                let b = self.spec()?;
                self.comma(name, "2 arguments")?;
                let orders = self.group()?;
                self.close(name, "2 arguments")?;
                RingSpec::GroupRing(Box::new(b), orders)
            }
            "UT2" => {
                let b = self.spec()?;
                self.close(name, "1 argument")?;
                RingSpec::UpperTriangular(Box::new(b))
            }
            "TruncPoly" => {
                let b = self.spec()?;
                self.comma(name, "2 arguments")?;
                let k = self.int()?;
                self.close(name, "2 arguments")?;
                RingSpec::TruncPoly(Box::new(b), k)
            }
            other => {
                return Err(ParseError::new(
                    off,
                    format!("unknown constructor name {other:?}"),
                ))
            }
        };
        Ok(spec)
    }

    fn group(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut orders = Vec::new();
        loop {
            self.skip_ws();
            let off = self.pos;
            if !self.src[self.pos..].starts_with("Cyclic") {
                let (_, w) = self.word();
                return Err(ParseError::new(
                    off,
                    if w.is_empty() {
                        "expected Cyclic(n)".to_string()
                    } else {
                        format!("unknown group constructor {w:?}")
                    },
                ));
            }
            self.pos += "Cyclic".len();
            self.expect('(')?;
            orders.push(self.int()?);
            self.close("Cyclic", "1 argument")?;
            match self.peek() {
                Some((_, 'x')) => self.pos += 1,
                _ => return Ok(orders),
            }
        }
    }
}
