//! Polynomial text syntax.
//!
//! ```text
//! poly   = ["-"] term (("+" | "-") term)*
//! term   = coef | [coef ["*"]] factor ("*" factor)*
//! factor = var ["^" int]
//! var    = [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace between tokens is ignored. Coefficients are reduced modulo `p`.

use super::context::RingContext;
use super::monomial::Monomial;
use super::poly::Polynomial;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingContext,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Digits reduced modulo `modulus`; `None` modulus returns the exact value.
    fn digits(&mut self) -> (usize, Vec<u8>) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start, self.src[start..self.pos].to_vec())
    }

    fn coefficient(&mut self) -> u32 {
        let (_, ds) = self.digits();
        let p = self.ring.characteristic() as u64;
        ds.iter().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p) as u32
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        match self.src.get(self.pos) {
            Some(b'-') => return Err(err(at, "negative exponent")),
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(err(at, "expected exponent after `^`")),
        }
        let (start, ds) = self.digits();
        let mut v: u64 = 0;
        for d in ds {
            v = v * 10 + (d - b'0') as u64;
            if v > u32::MAX as u64 {
                return Err(err(start, "exponent too large"));
            }
        }
        Ok(v as u32)
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(err(start, format!("unexpected character `{}`", *c as char))),
            None => return Err(err(start, "unexpected end of input")),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: start })?;
        let e = if self.eat(b'^') { self.exponent()? } else { 1 };
        exps[idx] = exps[idx].checked_add(e).ok_or(Error::ExponentOverflow)?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut coef = 1u32;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = self.coefficient();
                self.eat(b'*');
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() => self.factor(&mut exps)?,
                    _ => return Ok((Monomial::new(exps)?, coef)),
                }
            }
            _ => self.factor(&mut exps)?,
        }
        while self.eat(b'*') {
            self.factor(&mut exps)?;
        }
        Ok((Monomial::new(exps)?, coef))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut negate = self.eat(b'-');
        if self.peek().is_none() {
            return Err(err(self.pos, "empty polynomial"));
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { field.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => return Err(err(self.pos, format!("unexpected character `{}`", c as char))),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` as a polynomial of `ring`. Positions in errors are byte offsets.
pub fn parse_poly(text: &str, ring: &RingContext) -> Result<Polynomial> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, ring };
    parser.poly()
}

/// Parses a comma-separated generator list. Error positions refer to `text`.
pub fn parse_poly_list(text: &str, ring: &RingContext) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let f = parse_poly(piece, ring).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + offset },
            other => other,
        })?;
        out.push(f);
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64) -> RingContext {
        RingContext::grevlex(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn basic_terms() {
        let f = parse_poly("x^2 + 2*y", &r(3)).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.terms()[0], (Monomial::new(vec![2, 0]).unwrap(), 1));
        assert_eq!(f.terms()[1], (Monomial::new(vec![0, 1]).unwrap(), 2));
    }

    #[test]
    fn coefficients_reduce() {
        assert!(parse_poly("3*x", &r(3)).unwrap().is_zero());
        let f = parse_poly("x*y - y^2", &r(2)).unwrap();
        assert_eq!(f.to_string(), "x*y + y^2");
        assert_eq!(parse_poly("-1", &r(5)).unwrap().to_string(), "4");
        assert_eq!(parse_poly("2x y", &r(5)).map(|_| ()).unwrap_err(), err(3, "unexpected character `y`"));
        assert_eq!(parse_poly("12345678901234567890*x", &r(7)).unwrap().to_string(), "x");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("x + z", &r(2)).unwrap_err(),
            Error::UnknownVariable { name: "z".into(), pos: 4 }
        );
        assert_eq!(parse_poly("x^-2", &r(2)).unwrap_err(), err(2, "negative exponent"));
        assert!(matches!(parse_poly("x + ", &r(2)), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x $ y", &r(2)), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("", &r(2)), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^99999999999", &r(2)), Err(Error::Parse { .. })));
    }

    #[test]
    fn list_offsets() {
        assert_eq!(
            parse_poly_list("x, y, w", &r(2)).unwrap_err(),
            Error::UnknownVariable { name: "w".into(), pos: 6 }
        );
        assert_eq!(parse_poly_list("x,y", &r(2)).unwrap().len(), 2);
    }
}
