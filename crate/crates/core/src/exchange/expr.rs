//! Parser for the expression grammar used in seed files:
//! integers, symbols, `+ - * / ^` and parentheses.
//!
//! Exponents are integers, optionally parenthesised and signed. A coefficient
//! symbol may also carry a half-integer exponent such as `q1^(3/2)`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::rational::{RationalFunction, SymbolNames};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(text.parse().map_err(|_| Error::Parse(format!("bad integer {text}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Sym(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

enum Symbol {
    X(usize),
    Q(usize),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    nx: usize,
    nq: usize,
    names: &'a SymbolNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {op:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    /// Returns `(numerator, denominator)` of an exponent, denominator 1 or 2.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        let paren = self.eat('(');
        let negative = self.eat('-');
        let num = self.small_int()?;
        let mut den = 1;
        if paren && self.eat('/') {
            den = self.small_int()?;
        }
        if paren {
            self.expect(')')?;
        }
        if den != 1 && den != 2 {
            return Err(Error::Parse(format!("exponent denominator {den} is not 1 or 2")));
        }
        Ok((if negative { -num } else { num }, den))
    }

    fn small_int(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                i64::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))
            }
            other => Err(Error::Parse(format!("expected integer exponent, found {other:?}"))),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let (base, symbol) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (num, den) = self.exponent()?;
        if den == 1 {
            return base.pow(num);
        }
        match symbol {
            Some(Symbol::Q(i)) => {
                let mut halves = vec![0i32; self.nq];
                halves[i] = i32::try_from(num).map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(RationalFunction::monomial(self.nx, self.nq, &vec![0; self.nx], &halves))
            }
            _ => Err(Error::Parse("half-integer exponents apply only to coefficient symbols".into())),
        }
    }

    fn atom(&mut self) -> Result<(RationalFunction, Option<Symbol>)> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                let p = Poly::constant(self.nx + self.nq, v);
                Ok((RationalFunction::from_poly(self.nx, self.nq, p), None))
            }
            Some(Token::Sym(name)) => {
                self.pos += 1;
                let symbol = self.lookup(&name)?;
                let value = match symbol {
                    Symbol::X(i) => RationalFunction::x(self.nx, self.nq, i),
                    Symbol::Q(i) => {
                        let mut halves = vec![0i32; self.nq];
                        halves[i] = 2;
                        RationalFunction::monomial(self.nx, self.nq, &vec![0; self.nx], &halves)
                    }
                };
                Ok((value, Some(symbol)))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok((e, None))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn lookup(&self, name: &str) -> Result<Symbol> {
        if let Some(i) = self.names.x.iter().position(|n| n == name) {
            return Ok(Symbol::X(i));
        }
        if let Some(i) = self.names.q.iter().position(|n| n == name) {
            return Ok(Symbol::Q(i));
        }
        Err(Error::Parse(format!("unknown symbol {name}")))
    }
}

/// Parses an expression over `x1..x{nx}` and `q1..q{nq}`.
pub fn parse(s: &str, nx: usize, nq: usize) -> Result<RationalFunction> {
    parse_with(s, &SymbolNames::standard(nx, nq))
}

/// Parses an expression over custom symbol names.
pub fn parse_with(s: &str, names: &SymbolNames) -> Result<RationalFunction> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
        nx: names.x.len(),
        nq: names.q.len(),
        names,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
