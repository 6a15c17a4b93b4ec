//! Recursive-descent parser for coefficient text such as `(3-k^2)/k^2`.

use super::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    pub(crate) fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    pub(crate) fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        Some(digits.parse().unwrap())
    }

    pub(crate) fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len: usize = r
            .char_indices()
            .take_while(|(i, c)| c.is_ascii_alphabetic() || c == &'_' || (*i > 0 && c.is_ascii_digit()))
            .map(|(_, c)| c.len_utf8())
            .sum();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&r[..len])
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub(crate) fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let mut c = Cursor::new(s);
    let v = expr(&mut c)?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(v)
}

pub(crate) fn expr(c: &mut Cursor) -> Result<RatFunc> {
    let mut acc = term(c)?;
    loop {
        if c.eat('+') {
            acc = acc + term(c)?;
        } else if c.eat('-') {
            acc = acc - term(c)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<RatFunc> {
    let mut acc = unary(c)?;
    loop {
        if c.eat('*') {
            acc = acc * unary(c)?;
        } else if c.eat('/') {
            let d = unary(c)?;
            acc = acc.checked_div(&d)?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(c: &mut Cursor) -> Result<RatFunc> {
    if c.eat('-') {
        return Ok(-unary(c)?);
    }
    if c.eat('+') {
        return unary(c);
    }
    power(c)
}

fn power(c: &mut Cursor) -> Result<RatFunc> {
    let base = atom(c)?;
    if c.eat('^') {
        let e = c.integer().ok_or_else(|| c.err("expected exponent"))?;
        let e: u32 = e.try_into().map_err(|_| c.err("exponent too large"))?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn atom(c: &mut Cursor) -> Result<RatFunc> {
    if c.eat('(') {
        let v = expr(c)?;
        c.expect(')')?;
        return Ok(v);
    }
    if let Some(n) = c.integer() {
        return Ok(RatFunc::from_rational(BigRational::from_integer(n)));
    }
    let save = c.pos();
    match c.ident() {
        Some("k") => Ok(RatFunc::kappa()),
        _ => Err(Error::Parse { pos: save, msg: "expected number, 'k' or '('".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_ratfunc("1+2*3").unwrap(), RatFunc::from_int(7));
        assert_eq!(parse_ratfunc("-2^2").unwrap(), RatFunc::from_int(-4));
        assert_eq!(parse_ratfunc("1/2/2").unwrap(), RatFunc::frac(1, 4));
        assert_eq!(parse_ratfunc("(k+1)^2-k^2-2*k").unwrap(), RatFunc::one());
    }

    #[test]
    fn errors() {
        assert!(parse_ratfunc("1/(k-k)").is_err());
        assert!(parse_ratfunc("1+").is_err());
        assert!(parse_ratfunc("x").is_err());
        assert!(parse_ratfunc("2 3").is_err());
    }
}
