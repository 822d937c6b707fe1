//! Parsing of slope expressions such as `sqrt(10)/7` or `1/(2+phi)`.
//!
//! The accepted language is ordinary arithmetic over integers, `sqrt(INT)`,
//! `phi` (the small golden mean) and decimal literals, with `+ - * /` and
//! parentheses. This covers `INT`, `INT/INT`, `sqrt(INT)/INT`,
//! `(INT+INT*sqrt(INT))/INT` and `1/(INT+phi)`, as well as the text
//! serialization of [`Scalar`]. A decimal literal produces an approximate
//! scalar; mixing it with an irrational exact value is an error.

use crate::error::{Error, ParseError};
use crate::scalar::{square_free_split, Scalar, DEFAULT_TOLERANCE};

/// A parsed expression plus human-readable notes about normalizations applied
/// (for example a radicand reduced to its square-free part).
#[derive(Debug, Clone)]
pub struct ParsedAlpha {
    pub value: Scalar,
    pub notes: Vec<String>,
}

/// Parses with the default tolerance for decimal literals.
pub fn parse_alpha(expr: &str) -> Result<ParsedAlpha, ParseError> {
    parse_alpha_with_tolerance(expr, DEFAULT_TOLERANCE)
}

pub fn parse_alpha_with_tolerance(expr: &str, tol: f64) -> Result<ParsedAlpha, ParseError> {
    let mut p = Parser {
        src: expr,
        pos: 0,
        tol,
        notes: Vec::new(),
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != expr.len() {
        return Err(ParseError::new(p.pos, "unexpected trailing input"));
    }
    Ok(ParsedAlpha {
        value,
        notes: p.notes,
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tol: f64,
    notes: Vec<String>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected '{token}'")))
        }
    }

    fn combine(&self, at: usize, x: &Scalar, y: &Scalar) -> Result<(), ParseError> {
        x.compatible(y).map_err(|e| match e {
            Error::MixedExactness => {
                ParseError::new(at, "decimal literals cannot be mixed with square roots")
            }
            other => ParseError::new(at, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat("+") {
                let rhs = self.term()?;
                self.combine(at, &acc, &rhs)?;
                acc = acc + rhs;
            } else if self.eat("-") {
                let rhs = self.term()?;
                self.combine(at, &acc, &rhs)?;
                acc = acc - rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat("*") {
                let rhs = self.unary()?;
                self.combine(at, &acc, &rhs)?;
                acc = acc * rhs;
            } else if self.eat("/") {
                let rhs = self.unary()?;
                self.combine(at, &acc, &rhs)?;
                if rhs.is_zero() {
                    return Err(ParseError::new(at, "division by zero"));
                }
                acc = acc / rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseError> {
        if self.eat("-") {
            return Ok(-self.unary()?);
        }
        self.eat("+");
        self.primary()
    }

    fn primary(&mut self) -> Result<Scalar, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let v = self.expr()?;
            self.expect(")")?;
            return Ok(v);
        }
        if self.eat("phi") {
            return Ok(Scalar::phi());
        }
        if self.eat("sqrt") {
            self.expect("(")?;
            self.skip_ws();
            let arg_at = self.pos;
            let digits = self.digits().to_owned();
            if digits.is_empty() {
                return Err(ParseError::new(
                    arg_at,
                    "sqrt takes a non-negative integer literal",
                ));
            }
            let n: u64 = digits
                .parse()
                .map_err(|_| ParseError::new(arg_at, "radicand too large"))?;
            self.expect(")")?;
            let (outside, core) = square_free_split(n);
            if outside > 1 {
                self.notes
                    .push(format!("sqrt({n}) reduced to {outside}*sqrt({core})"));
            }
            return Ok(Scalar::sqrt_int(n));
        }
        if self.eat("~") {
            // Serialized approximation: ~value±tol
            let v = self.decimal(start)?;
            if !(self.eat("±") || self.eat("+-")) {
                return Err(ParseError::new(
                    self.pos,
                    "expected '±' after approximate value",
                ));
            }
            let tol_at = self.pos;
            let tol = self.decimal(tol_at)?;
            if !(tol > 0.0) {
                return Err(ParseError::new(tol_at, "tolerance must be positive"));
            }
            return Ok(Scalar::approx(v, tol));
        }
        let digits = self.digits().to_owned();
        if digits.is_empty() {
            return Err(ParseError::new(
                start,
                "expected a number, 'sqrt(', 'phi' or '('",
            ));
        }
        if self.rest().starts_with(['.', 'e', 'E']) {
            self.pos = start;
            let v = self.decimal(start)?;
            return Ok(Scalar::approx(v, self.tol));
        }
        let n: i64 = digits
            .parse()
            .map_err(|_| ParseError::new(start, "integer literal too large"))?;
        Ok(Scalar::int(n))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        &self.src[start..start + len]
    }

    fn decimal(&mut self, start: usize) -> Result<f64, ParseError> {
        self.skip_ws();
        let begin = self.pos;
        let len = self
            .rest()
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_digit()
                    || c == '.'
                    || c == 'e'
                    || c == 'E'
                    || ((c == '-' || c == '+')
                        && i > 0
                        && matches!(self.rest().as_bytes()[i - 1], b'e' | b'E'))
            })
            .count();
        self.pos += len;
        self.src[begin..self.pos]
            .parse()
            .map_err(|_| ParseError::new(start, "malformed decimal literal"))
    }
}
