//! Expression grammar shared by fixtures and the CLI.
//!
//! Integers, identifiers, `+ - * / ^ ( )`. An exponent may be linear in
//! `n`, which is only meaningful on `q`: `q^(a*n + b)` means `q^b * x^a`.

use super::int::Int;
use super::mpoly::Var;
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Int),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Int),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            let b = BigInt::from_str(&lit).map_err(|e| Error::Parse(e.to_string()))?;
            out.push(Tok::Num(Int::from_big(b)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} at {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{c}' at token {}", self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            // right associative; the exponent may carry its own sign
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Exponent `a*n + b` with integer coefficients.
fn linear_exponent(e: &Expr) -> Result<(i64, i64)> {
    let small = |v: &Int| v.as_i64().ok_or_else(|| Error::Parse("exponent too large".into()));
    match e {
        Expr::Num(v) => Ok((0, small(v)?)),
        Expr::Sym(s) if s == "n" => Ok((1, 0)),
        Expr::Sym(s) => Err(Error::Parse(format!("symbol {s} in exponent"))),
        Expr::Neg(a) => {
            let (a, b) = linear_exponent(a)?;
            Ok((-a, -b))
        }
        Expr::Add(l, r) | Expr::Sub(l, r) => {
            let (a1, b1) = linear_exponent(l)?;
            let (a2, b2) = linear_exponent(r)?;
            Ok(if matches!(e, Expr::Add(..)) { (a1 + a2, b1 + b2) } else { (a1 - a2, b1 - b2) })
        }
        Expr::Mul(l, r) => {
            let (a1, b1) = linear_exponent(l)?;
            let (a2, b2) = linear_exponent(r)?;
            if a1 != 0 && a2 != 0 {
                return Err(Error::Parse("exponent is not linear in n".into()));
            }
            Ok((a1 * b2 + a2 * b1, b1 * b2))
        }
        Expr::Pow(l, r) => match (linear_exponent(l)?, linear_exponent(r)?) {
            ((0, b), (0, e)) if (0..64).contains(&e) => {
                b.checked_pow(e as u32).map(|v| (0, v)).ok_or_else(|| Error::Parse("exponent too large".into()))
            }
            _ => Err(Error::Parse("unsupported exponent form".into())),
        },
        Expr::Div(..) => Err(Error::Parse("unsupported exponent form".into())),
    }
}

/// Operations an evaluation target must support.
pub trait Algebra: Clone {
    fn from_int(c: &Int) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, e: i64) -> Result<Self>;
    fn div(&self, o: &Self) -> Result<Self>;
}

impl Algebra for RatFun {
    fn from_int(c: &Int) -> Self {
        RatFun::from_poly(super::mpoly::MPoly::constant(c.clone()))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: i64) -> Result<Self> {
        RatFun::pow(self, e)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RatFun::div(self, o)
    }
}

/// Evaluates `e`; `sym` resolves identifiers, and `q^(a*n+b)` asks it for
/// `q` and `x`.
pub fn eval<A: Algebra>(e: &Expr, sym: &dyn Fn(&str) -> Result<A>) -> Result<A> {
    Ok(match e {
        Expr::Num(v) => A::from_int(v),
        Expr::Sym(s) if s == "n" => return Err(Error::Parse("n is only allowed in an exponent of q".into())),
        Expr::Sym(s) => sym(s)?,
        Expr::Neg(a) => eval(a, sym)?.neg(),
        Expr::Add(l, r) => eval(l, sym)?.add(&eval(r, sym)?),
        Expr::Sub(l, r) => eval(l, sym)?.sub(&eval(r, sym)?),
        Expr::Mul(l, r) => eval(l, sym)?.mul(&eval(r, sym)?),
        Expr::Div(l, r) => eval(l, sym)?.div(&eval(r, sym)?)?,
        Expr::Pow(b, x) => {
            let (a, c) = linear_exponent(x)?;
            if a == 0 {
                eval(b, sym)?.pow(c)?
            } else if matches!(&**b, Expr::Sym(s) if s == "q") {
                sym("q")?.pow(c)?.mul(&sym("x")?.pow(a)?)
            } else {
                return Err(Error::Parse("only q may carry an n-dependent exponent".into()));
            }
        }
    })
}

/// Parses into a rational function; `names` maps identifiers to variables.
pub fn parse_ratfun_with(s: &str, names: &[(&str, Var)]) -> Result<RatFun> {
    let e = parse_expr(s)?;
    let lookup = |id: &str| -> Result<RatFun> {
        names
            .iter()
            .find(|(n, _)| *n == id)
            .map(|(_, v)| RatFun::var(*v))
            .ok_or_else(|| Error::Parse(format!("unknown symbol {id}")))
    };
    eval(&e, &lookup)
}

pub const STD_NAMES: [(&str, Var); 4] = [("x", Var::X), ("y", Var::Y), ("z", Var::Z), ("q", Var::Q)];

/// Parses over `q`, `x` (= qⁿ), `y` (= qᵏ) and `z`.
pub fn parse_ratfun(s: &str) -> Result<RatFun> {
    parse_ratfun_with(s, &STD_NAMES)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_exponent_sugar() {
        let a = parse_ratfun("q^(3*n + 2)*(q^n - 1)").unwrap();
        let b = parse_ratfun("q^2*x^3*(x - 1)").unwrap();
        assert_eq!(a, b);
        let c = parse_ratfun("q^(-n-1)").unwrap();
        assert_eq!(c, parse_ratfun("1/(q*x)").unwrap());
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(parse_ratfun("-q^2").unwrap(), parse_ratfun("0 - q*q").unwrap());
        assert_eq!(parse_ratfun("(- 1 + q)^2").unwrap(), parse_ratfun("1 - 2*q + q^2").unwrap());
        assert_eq!(parse_ratfun("2^3^2").unwrap(), RatFun::from_i64(512));
        assert_eq!(parse_ratfun("q^-2").unwrap(), RatFun::q_pow(-2));
    }

    #[test]
    fn errors() {
        assert!(parse_ratfun("n + 1").is_err());
        assert!(parse_ratfun("x^n").is_err());
        assert!(parse_ratfun("q^(n*n)").is_err());
        assert!(parse_ratfun("(q + 1").is_err());
        assert!(parse_ratfun("w").is_err());
        assert!(parse_ratfun("").is_err());
        assert!(parse_ratfun("1/(q - q)").is_err());
    }

    #[test]
    fn display_round_trip() {
        let f = parse_ratfun("(x^2*y - 3*q^5)/(q*y - x + 7)").unwrap();
        assert_eq!(parse_ratfun(&f.to_string()).unwrap(), f);
    }
}
