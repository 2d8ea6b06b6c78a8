//! Text input for polynomials and ratios: `+ - * ^`, parentheses, integer
//! literals and identifiers. Juxtaposition multiplies, so `(1+x)(1+y)` works.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Poly, RationalFn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '(' => {
                out.push(Token::Open);
                i += 1
            }
            ')' => {
                out.push(Token::Close);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().expect("ascii digits")));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.bump() {
                Some(Token::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(Poly::constant(n)),
            Some(Token::Ident(name)) => Ok(Poly::var(&name)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            Some(Token::Minus) => Ok(-self.power()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_poly_tokens(tokens: Vec<Token>) -> Result<Poly> {
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(p)
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let tokens = tokenize(s)?;
        if tokens.contains(&Token::Slash) {
            return Err(Error::Parse("division in polynomial".into()));
        }
        parse_poly_tokens(tokens)
    }
}

/// `numer / denom` with a single top-level slash; a bare polynomial means a
/// denominator of one.
impl FromStr for RationalFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<RationalFn> {
        let tokens = tokenize(s)?;
        let mut depth = 0i32;
        let mut split = None;
        for (idx, t) in tokens.iter().enumerate() {
            match t {
                Token::Open => depth += 1,
                Token::Close => depth -= 1,
                Token::Slash if depth == 0 => {
                    if split.replace(idx).is_some() {
                        return Err(Error::Parse("more than one top-level '/'".into()));
                    }
                }
                Token::Slash => return Err(Error::Parse("nested '/'".into())),
                _ => {}
            }
        }
        match split {
            None => Ok(RationalFn::from_poly(parse_poly_tokens(tokens)?)),
            Some(idx) => {
                let denom = tokens[idx + 1..].to_vec();
                let mut numer = tokens;
                numer.truncate(idx);
                RationalFn::new(parse_poly_tokens(numer)?, parse_poly_tokens(denom)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication_and_powers() {
        let a: Poly = "(1+x)(1+y)".parse().unwrap();
        let b: Poly = "1 + x + y + x*y".parse().unwrap();
        assert_eq!(a, b);
        let c: Poly = "2x^2 - -y".parse().unwrap();
        assert_eq!(c.to_string(), "y + 2*x^2");
    }

    #[test]
    fn errors() {
        assert!("x +".parse::<Poly>().is_err());
        assert!("x / y".parse::<Poly>().is_err());
        assert!("(x".parse::<Poly>().is_err());
        assert!("x $ y".parse::<Poly>().is_err());
        assert!("a / b / c".parse::<RationalFn>().is_err());
    }

    #[test]
    fn ratio() {
        let r: RationalFn = "a / ((1+w)(1+y) + t)".parse().unwrap();
        assert_eq!(r.denom().to_string(), "1 + t + w + y + w*y");
    }
}
