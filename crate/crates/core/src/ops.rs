//! Normal-ordered arithmetic in the target algebras of the homomorphisms:
//! Weyl algebras with Laurent coordinates (`R_0`, `R_1`, `R_2`), the algebra
//! of polynomial differential operators `C[t, d/dt]`, the enveloping algebra
//! `U(b)` of the 2-dimensional solvable Lie algebra `[h,e] = e`, and tensor
//! products of these.
//!
//! Elements are always stored in normal order, so equality of elements is
//! equality of coefficient maps.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Interpreter};
use crate::scalar::{self, Scalar};

/// An associative algebra with a monomial basis closed under normal ordering.
pub trait Algebra: 'static + Sized {
    type Mono: Ord + Clone + fmt::Debug + Send + Sync;

    fn name() -> String;
    fn unit() -> Self::Mono;
    /// Normal-ordered product of two basis monomials.
    fn mul_mono(a: &Self::Mono, b: &Self::Mono) -> Vec<(Self::Mono, Scalar)>;
    /// Text for a monomial, empty for the unit.
    fn fmt_mono(m: &Self::Mono) -> String;
    /// Parser hook: the element named by an atom raised to `exp`.
    fn atom(name: &str, exp: i64) -> Result<OpElement<Self>>;
    fn tensor_atom(_lhs: &Expr, _rhs: &Expr) -> Result<OpElement<Self>> {
        Err(Error::AlgebraMismatch(format!("{} is not a tensor product", Self::name())))
    }
}

pub struct OpElement<A: Algebra> {
    terms: BTreeMap<A::Mono, Scalar>,
}

impl<A: Algebra> Clone for OpElement<A> {
    fn clone(&self) -> Self {
        OpElement { terms: self.terms.clone() }
    }
}

impl<A: Algebra> PartialEq for OpElement<A> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<A: Algebra> Eq for OpElement<A> {}

impl<A: Algebra> Default for OpElement<A> {
    fn default() -> Self {
        OpElement { terms: BTreeMap::new() }
    }
}

impl<A: Algebra> OpElement<A> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(A::unit(), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::mono(A::unit(), c)
    }

    pub fn mono(m: A::Mono, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: A::Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&A::Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                for (m, k) in A::mul_mono(m1, m2) {
                    out.add_term(m, &c * k);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn parse(text: &str) -> Result<Self> {
        expr::evaluate(&OpInterpreter::<A>(PhantomData), &expr::parse(text)?)
    }
}

impl<A: Algebra> fmt::Display for OpElement<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = scalar::abs(c);
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = A::fmt_mono(m);
            let text = if body.is_empty() {
                scalar::format(&mag)
            } else if mag.is_one() {
                body
            } else {
                format!("{}*{}", scalar::format(&mag), body)
            };
            write!(f, "{sign}{text}")?;
        }
        Ok(())
    }
}

impl<A: Algebra> fmt::Debug for OpElement<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", A::name(), self)
    }
}

struct OpInterpreter<A>(PhantomData<A>);

impl<A: Algebra> Interpreter for OpInterpreter<A> {
    type Value = OpElement<A>;

    fn constant(&self, c: Scalar) -> OpElement<A> {
        OpElement::scalar(c)
    }
    fn atom(&self, name: &str, index: Option<i64>, exp: i64) -> Result<OpElement<A>> {
        if index.is_some() {
            return Err(Error::AlgebraMismatch(format!("indexed atom {name}[..] in {}", A::name())));
        }
        A::atom(name, exp)
    }
    fn add(&self, a: &OpElement<A>, b: &OpElement<A>) -> OpElement<A> {
        a.add(b)
    }
    fn mul(&self, a: &OpElement<A>, b: &OpElement<A>) -> OpElement<A> {
        a.mul(b)
    }
    fn scale(&self, a: &OpElement<A>, c: &Scalar) -> OpElement<A> {
        a.scale(c)
    }
    fn tensor(&self, lhs: &Expr, rhs: &Expr) -> Result<OpElement<A>> {
        A::tensor_atom(lhs, rhs)
    }
}

/// Coordinate names of a Weyl-type algebra.
pub trait WeylVars: 'static + Send + Sync {
    const NAME: &'static str;
    const VARS: &'static [&'static str];
    /// Coordinates are invertible (`x^{-1}` exists).
    const LAURENT: bool;
}

/// Monomial `x^xexp * d^dexp` with every coordinate power to the left of
/// every derivative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylMonomial {
    pub xexp: Vec<i64>,
    pub dexp: Vec<u32>,
}

pub struct Weyl<V>(PhantomData<V>);

impl<V: WeylVars> Weyl<V> {
    pub fn coordinate(i: usize, e: i64) -> OpElement<Self> {
        let mut m = Self::unit();
        m.xexp[i] = e;
        OpElement::mono(m, Scalar::one())
    }

    pub fn derivative(i: usize, k: u32) -> OpElement<Self> {
        let mut m = Self::unit();
        m.dexp[i] = k;
        OpElement::mono(m, Scalar::one())
    }

    /// Euler operator `x_i d/dx_i`.
    pub fn euler(i: usize) -> OpElement<Self> {
        Self::coordinate(i, 1).mul(&Self::derivative(i, 1))
    }
}

impl<V: WeylVars> Algebra for Weyl<V> {
    type Mono = WeylMonomial;

    fn name() -> String {
        V::NAME.to_string()
    }

    fn unit() -> WeylMonomial {
        WeylMonomial { xexp: vec![0; V::VARS.len()], dexp: vec![0; V::VARS.len()] }
    }

    fn mul_mono(a: &WeylMonomial, b: &WeylMonomial) -> Vec<(WeylMonomial, Scalar)> {
        // d^p x^c = sum_k C(p,k) c(c-1)...(c-k+1) x^{c-k} d^{p-k}, for integer c.
        let mut acc = vec![(
            WeylMonomial { xexp: Vec::new(), dexp: Vec::new() },
            Scalar::one(),
        )];
        for i in 0..V::VARS.len() {
            let (xa, p, c, db) = (a.xexp[i], a.dexp[i], b.xexp[i], b.dexp[i]);
            let mut next = Vec::new();
            for (m, coef) in &acc {
                for k in 0..=p {
                    let f = scalar::falling(c, k);
                    if f.is_zero() {
                        continue;
                    }
                    let k_coef = Scalar::from_integer(scalar::binomial(p, k)) * f;
                    let mut m2 = m.clone();
                    m2.xexp.push(xa + c - k as i64);
                    m2.dexp.push(p + db - k);
                    next.push((m2, coef * &k_coef));
                }
            }
            acc = next;
        }
        acc
    }

    fn fmt_mono(m: &WeylMonomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in V::VARS.iter().enumerate() {
            match m.xexp[i] {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        for (i, name) in V::VARS.iter().enumerate() {
            match m.dexp[i] {
                0 => {}
                1 => parts.push(format!("d{name}")),
                e => parts.push(format!("d{name}^{e}")),
            }
        }
        parts.join("*")
    }

    fn atom(name: &str, exp: i64) -> Result<OpElement<Self>> {
        for (i, var) in V::VARS.iter().enumerate() {
            if name == *var {
                if exp < 0 && !V::LAURENT {
                    return Err(Error::Parse(format!("{var} is not invertible in {}", V::NAME)));
                }
                return Ok(Self::coordinate(i, exp));
            }
            let is_derivative = name.strip_prefix('d').or_else(|| name.strip_prefix('∂')) == Some(var);
            if is_derivative {
                if exp < 0 {
                    return Err(Error::Parse(format!("{name} is not invertible")));
                }
                return Ok(Self::derivative(i, exp as u32));
            }
            // D0 / ∂0 abbreviate the Euler operator x0*dx0
            if let Some(suffix) = var.strip_prefix('x') {
                if name == format!("D{suffix}") || name == format!("∂{suffix}") {
                    if exp < 0 {
                        return Err(Error::Parse(format!("{name} is not invertible")));
                    }
                    return Ok(Self::euler(i).pow(exp as u32));
                }
            }
        }
        Err(Error::AlgebraMismatch(format!("unknown symbol {name:?} in {}", V::NAME)))
    }
}

pub struct R2Vars;
impl WeylVars for R2Vars {
    const NAME: &'static str = "R2";
    const VARS: &'static [&'static str] = &["x0", "x1"];
    const LAURENT: bool = true;
}

pub struct R0Vars;
impl WeylVars for R0Vars {
    const NAME: &'static str = "R0";
    const VARS: &'static [&'static str] = &["x0"];
    const LAURENT: bool = true;
}

pub struct R1Vars;
impl WeylVars for R1Vars {
    const NAME: &'static str = "R1";
    const VARS: &'static [&'static str] = &["x1"];
    const LAURENT: bool = true;
}

pub struct DiffVars;
impl WeylVars for DiffVars {
    const NAME: &'static str = "D";
    const VARS: &'static [&'static str] = &["t"];
    const LAURENT: bool = false;
}

/// Weyl algebra of degree 2 with Laurent coordinates `x0, x1`.
pub type R2 = Weyl<R2Vars>;
pub type R0 = Weyl<R0Vars>;
pub type R1 = Weyl<R1Vars>;
/// Polynomial differential operators `C[t, dt]`.
pub type Diff = Weyl<DiffVars>;

pub type DiffOpElement = OpElement<Diff>;

/// `U(b)` with basis `h^i e^j`; the relation `[h,e] = e` gives
/// `e^j h^i = (h - j)^i e^j`.
pub struct Ub;

impl Ub {
    pub fn h() -> OpElement<Ub> {
        OpElement::mono((1, 0), Scalar::one())
    }

    pub fn e() -> OpElement<Ub> {
        OpElement::mono((0, 1), Scalar::one())
    }
}

impl Algebra for Ub {
    type Mono = (u32, u32);

    fn name() -> String {
        "U(b)".into()
    }

    fn unit() -> (u32, u32) {
        (0, 0)
    }

    fn mul_mono(a: &(u32, u32), b: &(u32, u32)) -> Vec<((u32, u32), Scalar)> {
        let (ha, eb) = *a;
        let (hc, ed) = *b;
        let shift = scalar::int(-(eb as i64));
        (0..=hc)
            .map(|k| {
                let coef = Scalar::from_integer(scalar::binomial(hc, k)) * scalar::pow(&shift, (hc - k) as i64);
                ((ha + k, eb + ed), coef)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn fmt_mono(m: &(u32, u32)) -> String {
        let mut parts = Vec::new();
        match m.0 {
            0 => {}
            1 => parts.push("h".to_string()),
            k => parts.push(format!("h^{k}")),
        }
        match m.1 {
            0 => {}
            1 => parts.push("e".to_string()),
            k => parts.push(format!("e^{k}")),
        }
        parts.join("*")
    }

    fn atom(name: &str, exp: i64) -> Result<OpElement<Ub>> {
        if exp < 0 {
            return Err(Error::Parse(format!("{name} is not invertible in U(b)")));
        }
        match name {
            "h" => Ok(OpElement::mono((exp as u32, 0), Scalar::one())),
            "e" => Ok(OpElement::mono((0, exp as u32), Scalar::one())),
            _ => Err(Error::AlgebraMismatch(format!("unknown symbol {name:?} in U(b)"))),
        }
    }
}

pub type UbElement = OpElement<Ub>;

/// Tensor product algebra with componentwise multiplication.
pub struct Tensor<A, B>(PhantomData<(A, B)>);

impl<A: Algebra, B: Algebra> Tensor<A, B> {
    pub fn pure(a: &OpElement<A>, b: &OpElement<B>) -> OpElement<Self> {
        let mut out = OpElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term((ma.clone(), mb.clone()), ca * cb);
            }
        }
        out
    }

    pub fn left(a: &OpElement<A>) -> OpElement<Self> {
        Self::pure(a, &OpElement::one())
    }

    pub fn right(b: &OpElement<B>) -> OpElement<Self> {
        Self::pure(&OpElement::one(), b)
    }
}

impl<A: Algebra, B: Algebra> Algebra for Tensor<A, B> {
    type Mono = (A::Mono, B::Mono);

    fn name() -> String {
        format!("{}⊗{}", A::name(), B::name())
    }

    fn unit() -> Self::Mono {
        (A::unit(), B::unit())
    }

    fn mul_mono(a: &Self::Mono, b: &Self::Mono) -> Vec<(Self::Mono, Scalar)> {
        let left = A::mul_mono(&a.0, &b.0);
        let right = B::mul_mono(&a.1, &b.1);
        let mut out = Vec::with_capacity(left.len() * right.len());
        for (ml, cl) in &left {
            for (mr, cr) in &right {
                out.push(((ml.clone(), mr.clone()), cl * cr));
            }
        }
        out
    }

    fn fmt_mono(m: &Self::Mono) -> String {
        let l = A::fmt_mono(&m.0);
        let r = B::fmt_mono(&m.1);
        if l.is_empty() && r.is_empty() {
            return String::new();
        }
        let l = if l.is_empty() { "1".to_string() } else { l };
        let r = if r.is_empty() { "1".to_string() } else { r };
        format!("({l})⊗({r})")
    }

    fn atom(name: &str, exp: i64) -> Result<OpElement<Self>> {
        match A::atom(name, exp) {
            Ok(a) => Ok(Self::left(&a)),
            Err(Error::AlgebraMismatch(_)) => B::atom(name, exp).map(|b| Self::right(&b)),
            Err(e) => Err(e),
        }
    }

    fn tensor_atom(lhs: &Expr, rhs: &Expr) -> Result<OpElement<Self>> {
        let a = expr::evaluate(&OpInterpreter::<A>(PhantomData), lhs)?;
        let b = expr::evaluate(&OpInterpreter::<B>(PhantomData), rhs)?;
        Ok(Self::pure(&a, &b))
    }
}

/// Target of the Weyl-algebra homomorphism: `R_2 ⊗ U(b)`.
pub type R2Ub = Tensor<R2, Ub>;
/// Target of the differential-operator homomorphism: `R_0 ⊗ C[t, dt]`.
pub type R0Diff = Tensor<R0, Diff>;

pub type TensorElement<A, B> = OpElement<Tensor<A, B>>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn r2(s: &str) -> OpElement<R2> {
        OpElement::parse(s).unwrap()
    }

    #[test]
    fn weyl_commutation_with_laurent_powers() {
        // [x0^n D0, x0^m] = m x0^{n+m}
        for n in -2..=2 {
            for m in -2..=2 {
                let lhs = R2::coordinate(0, n).mul(&R2::euler(0)).commutator(&R2::coordinate(0, m));
                assert_eq!(lhs, R2::coordinate(0, n + m).scale(&int(m)), "n={n} m={m}");
            }
        }
        assert_eq!(r2("dx0*x0"), r2("x0*dx0 + 1"));
        assert_eq!(r2("x1^-1*(x1*D1)"), r2("D1"));
        assert_eq!(r2("D1"), r2("x1*dx1"));
    }

    #[test]
    fn differential_operator_identities() {
        let d = |s: &str| DiffOpElement::parse(s).unwrap();
        assert_eq!(d("t*dt").commutator(&d("t^2")), d("2t^2"));
        assert_eq!(d("t*dt").commutator(&d("dt")), d("-dt"));
        assert_eq!(d("dt").commutator(&d("t")), d("1"));
        assert!(DiffOpElement::parse("t^-1").is_err());
    }

    #[test]
    fn ub_normal_order() {
        let u = |s: &str| UbElement::parse(s).unwrap();
        assert_eq!(Ub::e().mul(&Ub::h()), u("h*e - e"));
        assert_eq!(Ub::h().mul(&Ub::e()), u("h*e"));
        assert_eq!(Ub::e().mul(&Ub::h().pow(2)), u("h^2*e - 2*h*e + e"));
        assert_eq!(Ub::h().commutator(&Ub::e()), Ub::e());
    }

    #[test]
    fn tensor_products() {
        let t = |s: &str| OpElement::<R2Ub>::parse(s).unwrap();
        assert_eq!(t("(x0)⊗(1)").mul(&t("(1)⊗(e)")), t("(x0)⊗(e)"));
        for (n, m) in [(1, 2), (-1, 0), (2, -3)] {
            let u = R2Ub::left(&R2::coordinate(0, n).mul(&R2::euler(1)));
            let v = R2Ub::pure(&R2::coordinate(0, m).mul(&R2::coordinate(1, 1)), &Ub::h());
            let expect = R2Ub::pure(&R2::coordinate(0, n + m).mul(&R2::coordinate(1, 1)), &Ub::h());
            assert_eq!(u.commutator(&v), expect);
        }
        let u = t("(x0^2*dx1)⊗(h)");
        assert!(u.commutator(&u).is_zero());
        assert_eq!(t("x0*e"), t("(x0)(x)(e)"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(OpElement::<R2>::parse("t"), Err(Error::AlgebraMismatch(_))));
        assert!(matches!(OpElement::<R2>::parse("(x0)⊗(h)"), Err(Error::AlgebraMismatch(_))));
        assert!(OpElement::<Ub>::parse("e^-1").is_err());
    }

    #[test]
    fn display_uses_text_syntax() {
        let u = OpElement::<R2Ub>::parse("2*(x0^-1*dx1)⊗(h) - (1)⊗(e)").unwrap();
        let back = OpElement::<R2Ub>::parse(&u.to_string()).unwrap();
        assert_eq!(u, back);
    }
}
