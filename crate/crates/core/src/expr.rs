//! Text syntax for coefficient polynomials.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := rational | variable | '(' expr ')'
//! variable := 'a' uint
//! rational := ['-'] uint ['/' uint]
//! ```
//!
//! Whitespace is ignored between tokens. A leading minus is only accepted
//! on a numeric literal: write `-1*a0` or `0 - a0`, not `-a0`. Printing goes
//! through the `Display` impl of [`CoeffPolynomial`], whose output this
//! parser accepts.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::CoeffPolynomial;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected a number")]
    ExpectedNumber,
    #[error("unary minus is only allowed on numeric literals (write -1*... instead)")]
    UnaryMinus,
    #[error("variable a{index} is out of range for order {n}")]
    IndexOutOfRange { index: String, n: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by zero")]
    ZeroDenominator,
    #[error("unclosed parenthesis")]
    UnclosedParen,
}

/// Parses `src` as a polynomial in `a0..an`.
pub fn parse(src: &str, n: usize) -> Result<CoeffPolynomial, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, n };
    let out = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(out),
        Some(_) => Err(p.unexpected()),
    }
}

/// Parses a single rational literal such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, n: 0 };
    let negative = p.peek_token() == Some(b'-');
    if negative {
        p.pos += 1;
        p.skip_ws();
    }
    let r = p.rational()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(if negative { -r } else { r })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Next non-whitespace byte, without consuming it.
    fn peek_token(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.err_at(self.pos, ParseErrorKind::UnexpectedEnd),
            Some(_) => {
                // report the full UTF-8 character, not just its first byte
                let ch = std::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or(char::REPLACEMENT_CHARACTER);
                self.err_at(self.pos, ParseErrorKind::UnexpectedChar(ch))
            }
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.peek() {
                None => self.err_at(self.pos, ParseErrorKind::UnexpectedEnd),
                Some(_) => self.err_at(self.pos, ParseErrorKind::ExpectedNumber),
            });
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<CoeffPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek_token() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same order");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same order");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CoeffPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek_token() == Some(b'*') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc.max_exponent()
                .checked_add(rhs.max_exponent())
                .ok_or_else(|| self.err_at(at, ParseErrorKind::ExponentOverflow))?;
            acc = acc.mul(&rhs).expect("same order");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CoeffPolynomial, ParseError> {
        let base = self.atom()?;
        if self.peek_token() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let k: u32 = self.digits()?.parse().map_err(|_| self.err_at(at, ParseErrorKind::ExponentOverflow))?;
        base.max_exponent().checked_mul(k).ok_or_else(|| self.err_at(at, ParseErrorKind::ExponentOverflow))?;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<CoeffPolynomial, ParseError> {
        match self.peek_token() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_token() != Some(b')') {
                    return Err(match self.peek() {
                        None => self.err_at(open, ParseErrorKind::UnclosedParen),
                        Some(_) => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'a') => {
                self.pos += 1;
                let at = self.pos;
                let digits = self.digits()?.to_string();
                match digits.parse::<usize>() {
                    Ok(i) if i <= self.n => Ok(CoeffPolynomial::var(self.n, i)),
                    _ => Err(self.err_at(at, ParseErrorKind::IndexOutOfRange { index: digits, n: self.n })),
                }
            }
            Some(b'-') => {
                let at = self.pos;
                self.pos += 1;
                if !self.peek_token().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err_at(at, ParseErrorKind::UnaryMinus));
                }
                let r = self.rational()?;
                Ok(CoeffPolynomial::constant(self.n, -r))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(CoeffPolynomial::constant(self.n, r))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.peek_token() != Some(b'/') {
            return Ok(Rational::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let den: BigInt = self.digits()?.parse().expect("digits");
        if den.is_zero() {
            return Err(self.err_at(at, ParseErrorKind::ZeroDenominator));
        }
        Ok(Rational::new(num, den))
    }
}
