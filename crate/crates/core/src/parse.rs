//! Polynomial expression parsing with positioned errors.
//!
//! Grammar: integer or rational coefficients, a single variable, the
//! operators + - * ^ with implicit multiplication between a coefficient
//! and the variable (or a parenthesis), and nonnegative integer exponents.
//! Printing is canonical (descending powers) and parse-print-parse is a
//! fixed point.

use crate::poly::{BigInt, BigRat, RatPoly};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at offset {offset}: expected {}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
}

impl ParseError {
    fn new(offset: usize, expected: &[&str]) -> ParseError {
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// A parsed polynomial with its source text and variable name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub source: String,
    pub poly: RatPoly,
    pub var: String,
}

impl PolyExpr {
    /// Canonical form; parsing it back gives the same polynomial.
    pub fn canonical(&self) -> String {
        print_poly(&self.poly, &self.var)
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRat),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().expect("digits");
                // optional /digits for a rational literal
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(ParseError::new(slash + 1, &["digit"]));
                    }
                    let denom: BigInt = text[dstart..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(ParseError::new(dstart, &["nonzero denominator"]));
                    }
                    out.push((start, Tok::Num(BigRat::new(numer, denom))));
                } else {
                    out.push((start, Tok::Num(BigRat::from_integer(numer))));
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Var(text[start..i].to_string())));
            }
            _ => return Err(ParseError::new(i, &["operator", "number", "variable"])),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    var: Option<String>,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn offset(&self) -> usize {
        self.peek().map(|(o, _)| *o).unwrap_or(self.end)
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = if matches!(self.peek(), Some((_, Tok::Minus))) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some((_, Tok::Plus)) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some((_, Tok::Minus)) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' factor) | factor-by-adjacency)*
    fn term(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, Tok::Star)) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                // implicit multiplication: coefficient directly followed
                // by the variable or an opening parenthesis
                Some((_, Tok::Var(_))) | Some((_, Tok::LParen)) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ['^' uint]
    fn factor(&mut self) -> Result<RatPoly, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((_, Tok::Caret))) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some((_, Tok::Num(e))) => {
                    if !e.is_integer() {
                        return Err(ParseError::new(off, &["nonnegative integer exponent"]));
                    }
                    let e = e.to_integer();
                    use num_traits::ToPrimitive;
                    match e.to_u32() {
                        Some(e) => Ok(base.pow(e)),
                        None => Err(ParseError::new(off, &["nonnegative integer exponent"])),
                    }
                }
                _ => Err(ParseError::new(off, &["nonnegative integer exponent"])),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatPoly, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some((_, Tok::Num(v))) => Ok(RatPoly::constant(v)),
            Some((o, Tok::Var(name))) => {
                match &self.var {
                    None => self.var = Some(name),
                    Some(existing) if *existing == name => {}
                    Some(_) => {
                        return Err(ParseError::new(o, &["the single polynomial variable"]))
                    }
                }
                Ok(RatPoly::x())
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    other => Err(ParseError::new(
                        other.map(|(o, _)| o).unwrap_or(self.end),
                        &[")"],
                    )),
                }
            }
            _ => Err(ParseError::new(off, &["number", "variable", "("])),
        }
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(text: &str) -> Result<PolyExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        var: None,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(ParseError::new(parser.offset(), &["end of input", "operator"]));
    }
    Ok(PolyExpr {
        source: text.to_string(),
        poly,
        var: parser.var.unwrap_or_else(|| "x".to_string()),
    })
}

/// Canonical descending-power form with the given variable name.
pub fn print_poly(p: &RatPoly, var: &str) -> String {
    let with_x = p.to_string();
    if var == "x" {
        with_x
    } else {
        with_x.replace('x', var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn basic_forms() {
        assert_eq!(
            parse_poly("x^3+x+3").unwrap().poly,
            RatPoly::from_ints(&[3, 1, 0, 1])
        );
        assert_eq!(
            parse_poly("24 + 24x + 12x^2 + 4x^3 + x^4").unwrap().poly,
            RatPoly::from_ints(&[24, 24, 12, 4, 1])
        );
        assert_eq!(
            parse_poly("x^3 - x - 1").unwrap().poly,
            RatPoly::from_ints(&[-1, -1, 0, 1])
        );
        assert_eq!(parse_poly("-x + 1").unwrap().poly, RatPoly::from_ints(&[1, -1]));
        assert_eq!(
            parse_poly("(x+1)*(x-1)").unwrap().poly,
            RatPoly::from_ints(&[-1, 0, 1])
        );
        assert_eq!(
            parse_poly("2(x+1)").unwrap().poly,
            RatPoly::from_ints(&[2, 2])
        );
        assert_eq!(
            parse_poly("1/2x^2 + 3").unwrap().poly,
            RatPoly::new(vec![rat(3, 1), rat(0, 1), rat(1, 2)])
        );
        assert_eq!(parse_poly("t^2+1").unwrap().var, "t");
    }

    #[test]
    fn negative_exponent_offset() {
        let err = parse_poly("x^-1").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn multiple_variables_rejected() {
        let err = parse_poly("x + y").unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn garbage_positions() {
        assert_eq!(parse_poly("x +").unwrap_err().offset, 3);
        assert_eq!(parse_poly("3/0").unwrap_err().offset, 2);
        assert_eq!(parse_poly("(x+1").unwrap_err().offset, 4);
        assert_eq!(parse_poly("x$").unwrap_err().offset, 1);
    }

    #[test]
    fn canonical_fixed_point_corpus() {
        // 200 pseudorandom polynomials: parse(print(p)) == p and printing
        // is idempotent on the canonical form
        let mut s = 0x5eedu64;
        let mut next = move |m: i64| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % (m as u64)) as i64 - m / 2
        };
        for _ in 0..200 {
            let deg = (next(11).unsigned_abs() % 6) as usize;
            let mut coeffs = Vec::new();
            for _ in 0..=deg {
                let num = next(41);
                let den = 1 + next(9).abs();
                coeffs.push(rat(num, den));
            }
            let p = RatPoly::new(coeffs);
            let printed = print_poly(&p, "x");
            let reparsed = parse_poly(&printed).unwrap();
            assert_eq!(reparsed.poly, p, "round trip through {printed}");
            assert_eq!(reparsed.canonical(), printed);
        }
    }
}
