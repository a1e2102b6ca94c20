//! Text grammar for polynomials.
//!
//! Inner polynomials over `F_p[t]`:
//!
//! ```text
//! poly := ['-'] term (('+'|'-') term)*
//! term := INT | INT '*' 't' ('^' INT)? | 't' ('^' INT)?
//! ```
//!
//! Outer polynomials in `y` with `F_p[t]` coefficients:
//!
//! ```text
//! ypoly := ['-'] yterm (('+'|'-') yterm)*
//! yterm := '(' poly ')' ['*'] 'y' ('^' INT)?
//!        | INT '*' 'y' ('^' INT)?
//!        | 'y' ('^' INT)?
//!        | term
//! ```
//!
//! Whitespace is ignored. Integer coefficients are reduced mod `p`; a `-`
//! negates the following term. Canonical output is descending powers with
//! nonzero coefficients and no spaces, e.g. `t^3+t+1` and `(t+1)*y^4+y`.

use crate::error::{Error, Result};
use crate::ffield::{validate_prime, FpElem, Poly};
use crate::ypoly::YPoly;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Int(u64),
    T,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(digit) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(digit as u64))
                            .ok_or_else(|| Error::Parse(format!("integer overflow in `{input}`")))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            't' => {
                chars.next();
                out.push(Tok::T);
            }
            'y' => {
                chars.next();
                out.push(Tok::Y);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            other => {
                return Err(Error::Parse(format!("unexpected character `{other}` in `{input}`")))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<u64> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(v),
            _ => Err(Error::Parse(format!("expected {what} in `{}`", self.input))),
        }
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} in `{}`", self.input)))
    }

    /// Optional `^ INT` suffix, defaulting to `default`.
    fn exponent(&mut self, default: u64) -> Result<u64> {
        if self.peek() == Some(Tok::Caret) {
            self.bump();
            self.expect_int("exponent")
        } else {
            Ok(default)
        }
    }

    /// One inner term: INT, INT*t^k, or t^k. Returns (coefficient, power).
    fn poly_term(&mut self, p: u64) -> Result<(u64, usize)> {
        match self.bump() {
            Some(Tok::Int(v)) => {
                if self.peek() == Some(Tok::Star) {
                    self.bump();
                    if self.bump() != Some(Tok::T) {
                        return self.fail("expected `t` after `*`");
                    }
                    let k = self.exponent(1)?;
                    Ok((v % p, k as usize))
                } else {
                    Ok((v % p, 0))
                }
            }
            Some(Tok::T) => {
                let k = self.exponent(1)?;
                Ok((1, k as usize))
            }
            _ => self.fail("expected a coefficient or `t`"),
        }
    }

    /// Inner polynomial over F_p[t], stopping at `)` or end of input.
    fn poly(&mut self, p: u64) -> Result<Poly> {
        let mut acc = Poly::zero(p);
        let mut sign_neg = false;
        if self.peek() == Some(Tok::Minus) {
            self.bump();
            sign_neg = true;
        }
        loop {
            let (c, k) = self.poly_term(p)?;
            let mono = Poly::monomial(p, c, k);
            acc = if sign_neg { acc.sub(&mono) } else { acc.add(&mono) };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign_neg = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign_neg = true;
                }
                Some(Tok::RParen) | None => return Ok(acc),
                _ => return self.fail("expected `+`, `-`, or end of polynomial"),
            }
        }
    }

    /// One outer term. Returns (coefficient in F_p[t], power of y).
    fn yterm(&mut self, p: u64) -> Result<(Poly, u64)> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let coeff = self.poly(p)?;
                if self.bump() != Some(Tok::RParen) {
                    return self.fail("unclosed `(`");
                }
                if self.peek() == Some(Tok::Star) {
                    self.bump();
                }
                if self.bump() != Some(Tok::Y) {
                    return self.fail("expected `y` after coefficient group");
                }
                let m = self.exponent(1)?;
                Ok((coeff, m))
            }
            Some(Tok::Y) => {
                self.bump();
                let m = self.exponent(1)?;
                Ok((Poly::one(p), m))
            }
            Some(Tok::Int(v)) => {
                // Either a bare constant, INT*t^k, or INT*y^k.
                if self.toks.get(self.pos + 1) == Some(&Tok::Star)
                    && self.toks.get(self.pos + 2) == Some(&Tok::Y)
                {
                    self.bump();
                    self.bump();
                    self.bump();
                    let m = self.exponent(1)?;
                    Ok((Poly::constant(p, v % p), m))
                } else {
                    let (c, k) = self.poly_term(p)?;
                    Ok((Poly::monomial(p, c, k), 0))
                }
            }
            Some(Tok::T) => {
                let (c, k) = self.poly_term(p)?;
                Ok((Poly::monomial(p, c, k), 0))
            }
            _ => self.fail("expected a term"),
        }
    }

    fn ypoly(&mut self, p: u64) -> Result<YPoly> {
        let mut terms: Vec<(u64, Poly)> = Vec::new();
        let mut sign_neg = false;
        if self.peek() == Some(Tok::Minus) {
            self.bump();
            sign_neg = true;
        }
        loop {
            let (coeff, m) = self.yterm(p)?;
            let coeff = if sign_neg { coeff.neg() } else { coeff };
            terms.push((m, coeff));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign_neg = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign_neg = true;
                }
                None => return Ok(YPoly::from_terms(p, terms)),
                _ => return self.fail("expected `+`, `-`, or end of polynomial"),
            }
        }
    }
}

/// Parse an inner polynomial over `F_p[t]`.
pub fn parse_poly(p: u64, input: &str) -> Result<Poly> {
    validate_prime(p)?;
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty polynomial `{input}`")));
    }
    let mut parser = Parser { toks: &toks, pos: 0, input };
    let poly = parser.poly(p)?;
    if parser.pos != toks.len() {
        return parser.fail("trailing tokens");
    }
    Ok(poly)
}

/// Parse an outer polynomial in `y` with `F_p[t]` coefficients.
pub fn parse_ypoly(p: u64, input: &str) -> Result<YPoly> {
    validate_prime(p)?;
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty polynomial `{input}`")));
    }
    let mut parser = Parser { toks: &toks, pos: 0, input };
    let y = parser.ypoly(p)?;
    if parser.pos != toks.len() {
        return parser.fail("trailing tokens");
    }
    Ok(y)
}

/// Canonical display of an outer polynomial: descending powers of `y`,
/// constant coefficients inline, non-constant ones parenthesized.
pub fn format_ypoly(poly: &YPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&m, coeff) in poly.terms().iter().rev() {
        if m == 0 {
            parts.push(coeff.to_string());
            continue;
        }
        let ypow = if m == 1 { "y".to_string() } else { format!("y^{m}") };
        if coeff.is_constant() {
            let c = coeff.coeff(0).value;
            if c == 1 {
                parts.push(ypow);
            } else {
                parts.push(format!("{c}*{ypow}"));
            }
        } else {
            parts.push(format!("({coeff})*{ypow}"));
        }
    }
    parts.join("+")
}

/// Scale helper used by displays that need `c * f` with `c` in `F_p`.
pub fn scale(f: &Poly, c: u64) -> Poly {
    f.mul_scalar(FpElem { value: c % f.prime(), p: f.prime() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        for (p, text) in [
            (2u64, "t^3+t+1"),
            (2, "0"),
            (2, "1"),
            (3, "2*t^2+1"),
            (5, "4*t^7+3*t+2"),
            (3, "t"),
        ] {
            let parsed = parse_poly(p, text).unwrap();
            assert_eq!(parsed.to_string(), text, "round trip for {text}");
        }
    }

    #[test]
    fn poly_normalizes_on_parse() {
        // Coefficients reduce mod p, and repeated/unsorted terms merge.
        assert_eq!(parse_poly(2, "2*t^2+t+t").unwrap().to_string(), "0");
        assert_eq!(parse_poly(3, "5*t").unwrap().to_string(), "2*t");
        assert_eq!(parse_poly(3, "1+t^2").unwrap().to_string(), "t^2+1");
        assert_eq!(parse_poly(3, "t-t").unwrap().to_string(), "0");
        assert_eq!(parse_poly(3, "-t").unwrap().to_string(), "2*t");
        assert_eq!(parse_poly(3, "- t + 1").unwrap().to_string(), "2*t+1");
    }

    #[test]
    fn poly_rejects_garbage() {
        assert!(matches!(parse_poly(2, ""), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(2, "t^"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(2, "u+1"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(2, "t+"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(2, "3*"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(2, "(t)"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly(4, "t"), Err(Error::BadPrime(4))));
    }

    #[test]
    fn ypoly_round_trip() {
        for (p, text) in [
            (2u64, "(t+1)*y^4+(t^2)*y+1"),
            (2, "y^3"),
            (3, "y^9+y^6+2*y"),
            (5, "y^25+3*y"),
            (2, "(t^2+t)*y^2+t"),
        ] {
            let parsed = parse_ypoly(p, text).unwrap();
            assert_eq!(format_ypoly(&parsed), text, "round trip for {text}");
        }
    }

    #[test]
    fn ypoly_accepts_spaced_and_signed_input() {
        let a = parse_ypoly(3, "y^9 + y^6 - y").unwrap();
        assert_eq!(format_ypoly(&a), "y^9+y^6+2*y");
        let b = parse_ypoly(5, "y^25 - y").unwrap();
        assert_eq!(format_ypoly(&b), "y^25+4*y");
        let c = parse_ypoly(2, "(t + 1) * y^4 + y").unwrap();
        assert_eq!(format_ypoly(&c), "(t+1)*y^4+y");
    }

    #[test]
    fn ypoly_constant_terms_fold() {
        let a = parse_ypoly(2, "y^2+t+1+t").unwrap();
        assert_eq!(format_ypoly(&a), "y^2+1");
        let b = parse_ypoly(2, "y^0").unwrap();
        assert_eq!(format_ypoly(&b), "1");
    }

    #[test]
    fn ypoly_rejects_garbage() {
        assert!(matches!(parse_ypoly(2, "(t+1)*"), Err(Error::Parse(_))));
        assert!(matches!(parse_ypoly(2, "(t+1"), Err(Error::Parse(_))));
        assert!(matches!(parse_ypoly(2, "y*y"), Err(Error::Parse(_))));
        assert!(matches!(parse_ypoly(2, "z^2"), Err(Error::Parse(_))));
    }
}
