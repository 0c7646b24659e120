//! Sparse multivariate polynomials with optional Laurent variables.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration is in
//! lexicographic order and the last key is the lexicographic degree used by
//! the tensor-module reductions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    /// Exponents range over all integers instead of the naturals.
    pub laurent: bool,
}

impl Var {
    pub fn poly(name: &str) -> Var {
        Var { name: name.to_string(), laurent: false }
    }

    pub fn laurent(name: &str) -> Var {
        Var { name: name.to_string(), laurent: true }
    }
}

pub type Signature = Arc<[Var]>;

pub fn signature(vars: Vec<Var>) -> Signature {
    vars.into()
}

pub type Exponents = Vec<i64>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Signature,
    terms: BTreeMap<Exponents, Scalar>,
}

impl SparsePoly {
    pub fn zero(vars: &Signature) -> Self {
        SparsePoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Signature, c: Scalar) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &Signature) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn monomial(vars: &Signature, exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        for (e, v) in exps.iter().zip(vars.iter()) {
            assert!(v.laurent || *e >= 0, "negative exponent on polynomial variable {}", v.name);
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        SparsePoly { vars: vars.clone(), terms }
    }

    /// The variable at position `idx`, as a polynomial.
    pub fn var(vars: &Signature, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, e, Scalar::one())
    }

    /// `sum coeffs[k] * x_idx^k`.
    pub fn univariate(vars: &Signature, idx: usize, coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[idx] = k as i64;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(vars: &Signature, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Signature {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Lexicographically largest exponent vector; `None` for zero.
    pub fn leading(&self) -> Option<&Exponents> {
        self.terms.keys().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn degree_in(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().map(|x| x.abs()).sum()).max()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Scalar) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(format!(
                "{:?} vs {:?}",
                names(&self.vars),
                names(&other.vars)
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        debug_assert!(self.check_same(other).is_ok());
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    /// Multiply by the monomial `x_idx^e` (negative `e` only on Laurent variables).
    pub fn shift_exponent(&self, idx: usize, e: i64) -> Result<Self> {
        let v = &self.vars[idx];
        let mut out = Self::zero(&self.vars);
        for (ex, c) in &self.terms {
            let mut ex = ex.clone();
            ex[idx] += e;
            if ex[idx] < 0 && !v.laurent {
                return Err(Error::UnsupportedVariable(format!(
                    "negative power of polynomial variable {}",
                    v.name
                )));
            }
            out.add_term(ex, c.clone());
        }
        Ok(out)
    }

    fn polynomial_var(&self, idx: usize) -> Result<()> {
        let v = self
            .vars
            .get(idx)
            .ok_or_else(|| Error::VariableMismatch(format!("no variable at position {idx}")))?;
        if v.laurent {
            Err(Error::UnsupportedVariable(v.name.clone()))
        } else {
            Ok(())
        }
    }

    /// Substitutes `x_idx -> x_idx - offset`.
    pub fn shift(&self, idx: usize, offset: &Scalar) -> Result<Self> {
        self.polynomial_var(idx)?;
        if offset.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(&self.vars);
        let neg = -offset;
        for (e, c) in &self.terms {
            let k = e[idx] as u32;
            // (x - offset)^k = sum_j C(k,j) x^j (-offset)^(k-j)
            let mut power = Scalar::one();
            let mut pows = Vec::with_capacity(k as usize + 1);
            for _ in 0..=k {
                pows.push(power.clone());
                power *= &neg;
            }
            for j in 0..=k {
                let coef = c * Scalar::from_integer(scalar::binomial(k, j)) * &pows[(k - j) as usize];
                let mut ex = e.clone();
                ex[idx] = j as i64;
                out.add_term(ex, coef);
            }
        }
        Ok(out)
    }

    pub fn derive(&self, idx: usize) -> Result<Self> {
        self.polynomial_var(idx)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ex = e.clone();
                ex[idx] -= 1;
                out.add_term(ex, c * scalar::int(e[idx]));
            }
        }
        Ok(out)
    }

    /// Substitutes a scalar value for one variable (the variable stays in the
    /// signature with exponent zero).
    pub fn eval_var(&self, idx: usize, value: &Scalar) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ex = e.clone();
            let k = std::mem::replace(&mut ex[idx], 0);
            out.add_term(ex, c * scalar::pow(value, k));
        }
        out
    }

    /// Re-expresses the polynomial over `target`, mapping variable `i` of
    /// `self` to position `map[i]` of the target signature.
    pub fn embed(&self, target: &Signature, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.vars.len());
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ex = vec![0; target.len()];
            for (i, &pos) in map.iter().enumerate() {
                ex[pos] += e[i];
            }
            out.add_term(ex, c.clone());
        }
        out
    }

    /// Univariate coefficient list `[c_0, c_1, ...]` of a polynomial in a
    /// single polynomial variable.
    pub fn univariate_coeffs(&self) -> Vec<Scalar> {
        assert_eq!(self.vars.len(), 1, "univariate_coeffs on multivariate polynomial");
        let deg = self.degree_in(0).unwrap_or(-1);
        (0..=deg).map(|k| self.coeff(&[k])).collect()
    }

    /// Parses text such as `"t^2 + 1"` or `"x0^-1*x1 - 3/2"` over `vars`.
    pub fn parse(vars: &Signature, text: &str) -> Result<Self> {
        crate::expr::evaluate(&PolyInterpreter(vars), &crate::expr::parse(text)?)
    }
}

struct PolyInterpreter<'a>(&'a Signature);

impl crate::expr::Interpreter for PolyInterpreter<'_> {
    type Value = SparsePoly;

    fn constant(&self, c: Scalar) -> SparsePoly {
        SparsePoly::constant(self.0, c)
    }
    fn atom(&self, name: &str, index: Option<i64>, exp: i64) -> Result<SparsePoly> {
        let idx = self
            .0
            .iter()
            .position(|v| v.name == name)
            .filter(|_| index.is_none())
            .ok_or_else(|| Error::VariableMismatch(format!("unknown variable {name:?}, expected one of {:?}", names(self.0))))?;
        if exp < 0 && !self.0[idx].laurent {
            return Err(Error::UnsupportedVariable(format!("negative power of polynomial variable {name}")));
        }
        let mut e = vec![0; self.0.len()];
        e[idx] = exp;
        Ok(SparsePoly::monomial(self.0, e, Scalar::one()))
    }
    fn add(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a + b
    }
    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a * b
    }
    fn scale(&self, a: &SparsePoly, c: &Scalar) -> SparsePoly {
        a.scale(c)
    }
}

fn names(vars: &[Var]) -> Vec<&str> {
    vars.iter().map(|v| v.name.as_str()).collect()
}

impl<'a> Add for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("adding polynomials over different variables")
    }
}

impl<'a> Sub for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("subtracting polynomials over different variables")
    }
}

impl<'a> Mul for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("multiplying polynomials over different variables")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads more naturally
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => mono.push(v.name.clone()),
                    k => mono.push(format!("{}^{}", v.name, k)),
                }
            }
            let negative = c < &Scalar::zero();
            let mag = scalar::abs(c);
            let sign = match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = if mono.is_empty() {
                scalar::format(&mag)
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", scalar::format(&mag), mono.join("*"))
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({})", names(&self.vars).join(","), self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Exponents,
    #[serde(with = "scalar::serde_str")]
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<Var>,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { exp: e.clone(), coef: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let vars = signature(repr.vars);
        let mut p = SparsePoly::zero(&vars);
        for t in repr.terms {
            if t.exp.len() != vars.len() {
                return Err(serde::de::Error::custom("exponent vector length differs from variable count"));
            }
            if t.exp.iter().zip(vars.iter()).any(|(e, v)| *e < 0 && !v.laurent) {
                return Err(serde::de::Error::custom("negative exponent on polynomial variable"));
            }
            p.add_term(t.exp, t.coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn st() -> Signature {
        signature(vec![Var::poly("s"), Var::poly("t")])
    }

    #[test]
    fn addition_cancels_and_prunes() {
        let v = st();
        let s = SparsePoly::var(&v, 0);
        let t = SparsePoly::var(&v, 1);
        let sum = &(&s + &t) + &(-&s);
        assert_eq!(sum, t);
        assert_eq!(sum.len(), 1);
        let two_s2 = SparsePoly::monomial(&v, vec![2, 0], int(2));
        let three_s2 = SparsePoly::monomial(&v, vec![2, 0], int(3));
        assert_eq!(&two_s2 + &three_s2, SparsePoly::monomial(&v, vec![2, 0], int(5)));
    }

    #[test]
    fn parse_text_forms() {
        let v = st();
        let p = SparsePoly::parse(&v, "s^2*t + 2s - 3").unwrap();
        assert_eq!(p.to_string(), "s^2*t + 2*s - 3");
        assert_eq!(SparsePoly::parse(&v, &p.to_string()).unwrap(), p);
        assert!(matches!(SparsePoly::parse(&v, "x"), Err(Error::VariableMismatch(_))));
        assert!(SparsePoly::parse(&v, "t^-1").is_err());
        let x = signature(vec![Var::laurent("x0")]);
        assert_eq!(SparsePoly::parse(&x, "x0^-1").unwrap(), SparsePoly::monomial(&x, vec![-1], int(1)));
    }

    #[test]
    fn laurent_exponents_are_kept() {
        let v = signature(vec![Var::laurent("x0")]);
        let inv = SparsePoly::monomial(&v, vec![-1], int(1));
        assert_eq!(&inv + &inv, SparsePoly::monomial(&v, vec![-1], int(2)));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = SparsePoly::one(&st());
        let b = SparsePoly::one(&signature(vec![Var::poly("s")]));
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn shift_and_derive() {
        let v = st();
        let s2 = SparsePoly::monomial(&v, vec![2, 0], int(1));
        let expect = SparsePoly::from_terms(&v, [(vec![2, 0], int(1)), (vec![1, 0], int(-2)), (vec![0, 0], int(1))]);
        assert_eq!(s2.shift(0, &int(1)).unwrap(), expect);

        let st_ = SparsePoly::monomial(&v, vec![1, 1], int(1));
        let expect = SparsePoly::from_terms(&v, [(vec![1, 1], int(1)), (vec![0, 1], int(-2))]);
        assert_eq!(st_.shift(0, &int(2)).unwrap(), expect);

        let t3 = SparsePoly::monomial(&v, vec![0, 3], int(1));
        assert_eq!(t3.derive(1).unwrap(), SparsePoly::monomial(&v, vec![0, 2], int(3)));
    }

    #[test]
    fn laurent_shift_rejected() {
        let v = signature(vec![Var::laurent("x0")]);
        let p = SparsePoly::var(&v, 0);
        assert!(matches!(p.shift(0, &int(1)), Err(Error::UnsupportedVariable(_))));
        assert!(matches!(p.derive(0), Err(Error::UnsupportedVariable(_))));
    }

    #[test]
    fn display_reads_naturally() {
        let v = st();
        let p = SparsePoly::from_terms(&v, [(vec![1, 0], int(2)), (vec![0, 0], int(-3)), (vec![2, 1], int(1))]);
        assert_eq!(p.to_string(), "s^2*t + 2*s - 3");
    }

    #[test]
    fn serde_round_trip() {
        let v = signature(vec![Var::laurent("x"), Var::poly("h")]);
        let p = SparsePoly::from_terms(&v, [(vec![-2, 1], crate::scalar::frac(1, 3)), (vec![0, 0], int(4))]);
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"1/3\""));
        let back: SparsePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
