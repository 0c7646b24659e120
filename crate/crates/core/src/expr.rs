//! Small expression language shared by every text input: polynomials
//! (`"t^2 + 1"`), operator-algebra elements (`"x0^-1*dx1"`,
//! `"(x0)⊗(h - e)"`) and elements of `U(L)` (`"b[0]*a[0] - 3*d[0]"`).
//!
//! Parsing produces an [`Expr`] tree; an [`Interpreter`] gives the atoms
//! meaning in a particular algebra.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Atom { name: String, index: Option<i64> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String, Option<i64>),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let text = text.replace("(x)", "⊗");
    let chars: Vec<char> = text.chars().collect();
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
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' || c == '∂' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '∂') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let mut index = None;
            if i < chars.len() && chars[i] == '[' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| Error::Parse(format!("unclosed '[' after {name}")))?;
                let inner: String = chars[i + 1..i + close].iter().collect();
                index = Some(
                    inner
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad index [{inner}] on {name}")))?,
                );
                i += close + 1;
            }
            out.push(Tok::Ident(name, index));
        } else if "+-*/^()⊗".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.tensor()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.tensor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let lhs = self.product()?;
        if self.eat('⊗') {
            let rhs = self.product()?;
            return Ok(Expr::Tensor(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(..)) | Some(Tok::Op('(')))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_primary() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(Error::Parse("expected integer exponent after '^'".into()));
            };
            self.pos += 1;
            let e: i64 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n}")))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(scalar::parse(&n)?))
            }
            Some(Tok::Ident(name, index)) => {
                self.pos += 1;
                Ok(Expr::Atom { name, index })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {text:?}")));
    }
    Ok(e)
}

/// Gives meaning to atoms and arithmetic in a target algebra.
pub trait Interpreter {
    type Value: Clone;

    fn constant(&self, c: Scalar) -> Self::Value;
    /// `name[index]^exp`; negative exponents only where the atom is invertible.
    fn atom(&self, name: &str, index: Option<i64>, exp: i64) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, a: &Self::Value, c: &Scalar) -> Self::Value;

    fn tensor(&self, _lhs: &Expr, _rhs: &Expr) -> Result<Self::Value> {
        Err(Error::AlgebraMismatch("'⊗' used outside a tensor product algebra".into()))
    }
}

pub fn evaluate<I: Interpreter>(interp: &I, e: &Expr) -> Result<I::Value> {
    Ok(match e {
        Expr::Num(c) => interp.constant(c.clone()),
        Expr::Atom { name, index } => interp.atom(name, *index, 1)?,
        Expr::Neg(x) => interp.scale(&evaluate(interp, x)?, &-scalar::one()),
        Expr::Add(a, b) => interp.add(&evaluate(interp, a)?, &evaluate(interp, b)?),
        Expr::Sub(a, b) => {
            let b = interp.scale(&evaluate(interp, b)?, &-scalar::one());
            interp.add(&evaluate(interp, a)?, &b)
        }
        Expr::Mul(a, b) => interp.mul(&evaluate(interp, a)?, &evaluate(interp, b)?),
        Expr::Div(a, b) => {
            let d = constant_value(b)
                .ok_or_else(|| Error::Parse("only division by a rational constant is supported".into()))?;
            if num_traits::Zero::is_zero(&d) {
                return Err(Error::Parse("division by zero".into()));
            }
            interp.scale(&evaluate(interp, a)?, &d.recip())
        }
        Expr::Pow(base, k) => match base.as_ref() {
            Expr::Atom { name, index } => interp.atom(name, *index, *k)?,
            other => {
                if let Some(c) = constant_value(other) {
                    interp.constant(scalar::pow(&c, *k))
                } else if *k < 0 {
                    return Err(Error::Parse("negative power of a compound expression".into()));
                } else {
                    let v = evaluate(interp, other)?;
                    let mut acc = interp.constant(scalar::one());
                    for _ in 0..*k {
                        acc = interp.mul(&acc, &v);
                    }
                    acc
                }
            }
        },
        Expr::Tensor(l, r) => interp.tensor(l, r)?,
    })
}

/// Value of an expression built only from numbers.
pub fn constant_value(e: &Expr) -> Option<Scalar> {
    Some(match e {
        Expr::Num(c) => c.clone(),
        Expr::Neg(x) => -constant_value(x)?,
        Expr::Add(a, b) => constant_value(a)? + constant_value(b)?,
        Expr::Sub(a, b) => constant_value(a)? - constant_value(b)?,
        Expr::Mul(a, b) => constant_value(a)? * constant_value(b)?,
        Expr::Div(a, b) => {
            let d = constant_value(b)?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            constant_value(a)? / d
        }
        Expr::Pow(b, k) => {
            let b = constant_value(b)?;
            if *k < 0 && num_traits::Zero::is_zero(&b) {
                return None;
            }
            scalar::pow(&b, *k)
        }
        _ => return None,
    })
}
