//! Recursive-descent parser for scalar strings.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power (('*'|'/') power)*
//! power := atom ['^' ['+'|'-'] integer]
//! atom  := integer | 'q' | '(' expr ')'
//! ```
//!
//! This accepts everything the formatter emits, including Laurent terms
//! `q^-2` and quotients `(q + 1)/(q^2 + 3)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FieldContext, QScalar};
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 100_000;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    ctx: FieldContext,
}

pub(super) fn parse_scalar(text: &str, ctx: FieldContext) -> Result<QScalar> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        ctx,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty scalar"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(value)
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QScalar> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QScalar> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let d = self.power()?;
                if d.is_zero() {
                    return Err(Error::parse(at, "division by zero"));
                }
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QScalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::parse(at, "expected exponent"));
        }
        let k: u64 = digits
            .parse()
            .ok()
            .filter(|k| *k <= MAX_EXPONENT)
            .ok_or_else(|| Error::parse(at, "exponent out of range"))?;
        let k = if negative { -(k as i64) } else { k as i64 };
        if base.is_zero() && k < 0 {
            return Err(Error::parse(at, "division by zero"));
        }
        base.pow(k)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Result<QScalar> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q(self.ctx))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n: BigInt = self.digits().parse().expect("digit string");
                Ok(QScalar::from_rational(
                    self.ctx,
                    BigRational::from_integer(n),
                ))
            }
            Some(c) => Err(Error::parse(
                at,
                format!("unexpected character `{}`", c as char),
            )),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational;
    use super::*;

    #[test]
    fn grammar_cases() {
        let ctx = FieldContext::cyclotomic(5).unwrap();
        let x = parse_scalar("-1/2*q^2 + 3", ctx).unwrap();
        let q2 = QScalar::q_pow(ctx, 2);
        let expected = &q2.scale(&rational(-1, 2)) + &QScalar::from_int(ctx, 3);
        assert_eq!(x, expected);
        assert_eq!(x.format(), "-1/2*q^2 + 3");

        let ctx4 = FieldContext::cyclotomic(4).unwrap();
        assert!(parse_scalar("q^4", ctx4).unwrap().is_one());
    }

    #[test]
    fn malformed_inputs() {
        let ctx = FieldContext::GenericQ;
        assert!(matches!(
            parse_scalar("1/0", ctx),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(parse_scalar("", ctx), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("2*", ctx), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("q^", ctx), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scalar("x", ctx),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(parse_scalar("(q", ctx), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scalar("3 3", ctx),
            Err(Error::Parse { pos: 2, .. })
        ));
    }

    #[test]
    fn generic_quotients_and_laurent_terms() {
        let ctx = FieldContext::GenericQ;
        let x = parse_scalar("(q + 1)/(q^2 - 3)", ctx).unwrap();
        assert_eq!(x.format(), "(q + 1)/(q^2 - 3)");
        let y = parse_scalar("q^-2 + 3*q", ctx).unwrap();
        assert_eq!(y.format(), "3*q + q^-2");
        assert_eq!(parse_scalar(&y.format(), ctx).unwrap(), y);
    }
}
