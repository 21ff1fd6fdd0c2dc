//! Text syntax shared by every file format.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | name | ('ln' | 'exp') '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names are the declared variables, `h` and `eps`. Rationals are written
//! `p/q`. Columns in errors are 1-based character positions.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coeff;
use super::expr::RationalExpr;
use super::mpoly::MPoly;
use super::names::VarNames;
use super::series::HSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Name(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(col, format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.col(), format!("expected '{}'", c)))
        }
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs + self.term()?;
            } else if self.eat('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat('/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let k: i32 = n.try_into().map_err(|_| Error::parse(col, "exponent too large"))?;
                Ok(RationalExpr::Pow(Box::new(base), if neg { -k } else { k }))
            }
            _ => Err(Error::parse(col, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalExpr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RationalExpr::Lit(Coeff::from_rational(BigRational::from_integer(n))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "ln" | "exp" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(if name == "ln" {
                            RationalExpr::Ln(Box::new(e))
                        } else {
                            RationalExpr::Exp(Box::new(e))
                        })
                    }
                    _ => {
                        if let Some(i) = self.names.index(&name) {
                            Ok(RationalExpr::Var(i))
                        } else if name == "h" {
                            Ok(RationalExpr::H)
                        } else if name == "eps" {
                            Ok(RationalExpr::Eps)
                        } else {
                            Err(Error::parse(col, format!("unknown name '{}'", name)))
                        }
                    }
                }
            }
            Some(Tok::Sym(c)) => Err(Error::parse(col, format!("unexpected '{}'", c))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(s: &str, names: &VarNames) -> Result<RationalExpr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.chars().count() + 1, names };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.col(), "trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial in the variables of `names`.
pub fn parse_poly(s: &str, names: &VarNames) -> Result<MPoly> {
    parse_expr(s, names)?.to_poly(names.len())
}

/// Parses and expands a closed form modulo `h^(order+1)`.
pub fn parse_series(s: &str, names: &VarNames, order: usize) -> Result<HSeries> {
    parse_expr(s, names)?.expand(order, names.len())
}
