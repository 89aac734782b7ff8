use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{BiPoly, Rational};

/// Largest total degree of any intermediate polynomial.
pub const MAX_DEGREE: u32 = 128;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = MAX_DEGREE;
/// Largest number of term products spent on one multiplication.
const MAX_WORK: usize = 1 << 20;
/// Longest accepted integer literal, in digits.
const MAX_DIGITS: usize = 400;
/// Deepest accepted parenthesis nesting.
const MAX_NESTING: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

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

    fn digits(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        if self.pos - start > MAX_DIGITS {
            self.pos = start;
            return self.err("integer literal too long");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn exponent(&mut self) -> PResult<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        let at = self.pos;
        let n = self.digits()?;
        match u32::try_from(n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => {
                self.pos = at;
                self.err(format!("exponent exceeds {MAX_EXPONENT}"))
            }
        }
    }

    fn product(&self, a: &BiPoly, b: &BiPoly, at: usize) -> PResult<BiPoly> {
        if a.total_degree() + b.total_degree() > MAX_DEGREE {
            return Err(ParseError {
                position: at,
                message: format!("degree exceeds {MAX_DEGREE}"),
            });
        }
        if a.len().saturating_mul(b.len()) > MAX_WORK {
            return Err(ParseError {
                position: at,
                message: "expansion too large".into(),
            });
        }
        Ok(a.mul(b))
    }

    fn power(&self, base: &BiPoly, e: u32, at: usize) -> PResult<BiPoly> {
        let mut acc = BiPoly::from_rationals([((0, 0), Rational::one())]);
        for _ in 0..e {
            acc = self.product(&acc, base, at)?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> PResult<BiPoly> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(c: Option<u8>) -> bool {
        matches!(c, Some(b'0'..=b'9' | b'x' | b'y' | b'('))
    }

    fn term(&mut self) -> PResult<BiPoly> {
        let at = self.pos;
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat(b'*');
            if !explicit && !Self::starts_factor(self.peek()) {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = self.product(&acc, &rhs, at)?;
        }
    }

    fn factor(&mut self) -> PResult<BiPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'0'..=b'9') => {
                let n = self.digits()?;
                let q = if self.eat(b'/') {
                    let d = self.digits()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(BiPoly::from_rationals([((0, 0), q)]))
            }
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let e = self.exponent()?;
                let exp = if c == b'x' { (e, 0) } else { (0, e) };
                Ok(BiPoly::from_rationals([(exp, Rational::one())]))
            }
            Some(b'(') => {
                if self.depth >= MAX_NESTING {
                    return self.err("parentheses nested too deeply");
                }
                self.pos += 1;
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                let e = self.exponent()?;
                self.power(&inner, e, at)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse and fully expand a polynomial in `x` and `y` with rational coefficients.
///
/// A leading sign is accepted at the start of any expression. Juxtaposition multiplies.
pub fn parse_polynomial(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}
