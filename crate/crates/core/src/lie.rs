//! The Lie algebra spanned by `L_n, a_n, b_n, c_n, d_n` (Witt algebra acting
//! on the loop algebra of the 4-dimensional Diamond algebra) and
//! PBW-normalized arithmetic in its universal enveloping algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::SparsePoly;
use crate::scalar::{self, Scalar};

/// Generator families, in PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L,
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::L, Family::A, Family::B, Family::C, Family::D];

    pub fn symbol(self) -> char {
        match self {
            Family::L => 'L',
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }
}

/// A basis element `x_n`. The derived order (family, then index) is the
/// PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: Family,
    pub index: i64,
}

impl Generator {
    pub const fn new(family: Family, index: i64) -> Self {
        Generator { family, index }
    }

    pub const fn l(n: i64) -> Self {
        Self::new(Family::L, n)
    }
    pub const fn a(n: i64) -> Self {
        Self::new(Family::A, n)
    }
    pub const fn b(n: i64) -> Self {
        Self::new(Family::B, n)
    }
    pub const fn c(n: i64) -> Self {
        Self::new(Family::C, n)
    }
    pub const fn d(n: i64) -> Self {
        Self::new(Family::D, n)
    }

    /// All generators with index in `[-window, window]`.
    pub fn window(window: i64) -> Vec<Generator> {
        Family::ALL
            .iter()
            .flat_map(|&f| (-window..=window).map(move |n| Generator::new(f, n)))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family.symbol(), self.index)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a generator: {s:?} (expected e.g. \"L[-1]\")"));
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'L' => Family::L,
            'a' => Family::A,
            'b' => Family::B,
            'c' => Family::C,
            'd' => Family::D,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim();
        let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let index = inner.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(Generator { family, index })
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite linear combination of generators.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct LElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_generator(g: Generator) -> Self {
        Self::term(g, Scalar::one())
    }

    pub fn term(g: Generator, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn add_term(&mut self, g: Generator, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &LElement) -> LElement {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LElement {
        let mut out = LElement::zero();
        for (g, x) in &self.terms {
            out.add_term(*g, x * c);
        }
        out
    }

    pub fn bracket(&self, other: &LElement) -> LElement {
        let mut out = LElement::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                for (z, cz) in bracket(*x, *y).terms {
                    out.add_term(z, cx * cy * cz);
                }
            }
        }
        out
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, self.terms.iter().map(|(g, c)| (g.to_string(), c)))
    }
}

fn write_linear<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (body, c) in terms {
        let neg = c < &Scalar::zero();
        let mag = scalar::abs(c);
        let sign = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let body = if body.is_empty() {
            scalar::format(&mag)
        } else if mag.is_one() {
            body
        } else {
            format!("{}*{}", scalar::format(&mag), body)
        };
        write!(f, "{sign}{body}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// The structure constants.
pub fn bracket(x: Generator, y: Generator) -> LElement {
    use Family::*;
    let (m, n) = (x.index, y.index);
    let k = m + n;
    match (x.family, y.family) {
        (L, L) => LElement::term(Generator::l(k), scalar::int(n - m)),
        (L, f) => LElement::term(Generator::new(f, k), scalar::int(n)),
        (f, L) => LElement::term(Generator::new(f, k), scalar::int(-m)),
        (A, B) => LElement::term(Generator::c(k), scalar::one()),
        (B, A) => LElement::term(Generator::c(k), -scalar::one()),
        (D, A) => LElement::term(Generator::a(k), scalar::one()),
        (A, D) => LElement::term(Generator::a(k), -scalar::one()),
        (D, B) => LElement::term(Generator::b(k), -scalar::one()),
        (B, D) => LElement::term(Generator::b(k), scalar::one()),
        _ => LElement::zero(),
    }
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobi_residual(x: Generator, y: Generator, z: Generator) -> LElement {
    let (ex, ey, ez) = (LElement::from_generator(x), LElement::from_generator(y), LElement::from_generator(z));
    ex.bracket(&ey.bracket(&ez))
        .add(&ey.bracket(&ez.bracket(&ex)))
        .add(&ez.bracket(&ex.bracket(&ey)))
}

pub type Word = Vec<Generator>;

/// Element of the free associative algebra on the generators: a linear
/// combination of words with no reordering applied. Module actions and
/// certificates operate on these directly.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::word(Vec::new(), c)
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn generator(g: Generator) -> Self {
        Self::word(vec![g], Scalar::one())
    }

    pub fn from_lie(x: &LElement) -> Self {
        let mut e = Self::zero();
        for (g, c) in x.terms() {
            e.add_term(vec![*g], c.clone());
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Concatenation product (`self` on the left).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Evaluates a univariate polynomial at this element.
    pub fn eval_poly(&self, coeffs: &[Scalar]) -> Self {
        let mut out = Self::zero();
        let mut power = Self::one();
        for c in coeffs {
            out = out.add(&power.scale(c));
            power = power.mul(self);
        }
        out
    }

    pub fn normalize(&self) -> UEnvElement {
        UEnvElement(straighten(self.terms.clone()))
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(
            f,
            self.terms.iter().map(|(w, c)| {
                (w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*"), c)
            }),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct WordTerm {
    word: Vec<Generator>,
    #[serde(with = "scalar::serde_str")]
    coef: Scalar,
}

/// Serialized as `[{"word": ["b[0]", "a[0]"], "coef": "1"}, ...]`.
impl Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(w, c)| WordTerm { word: w.clone(), coef: c.clone() }))
    }
}

impl<'de> Deserialize<'de> for FreeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<WordTerm>::deserialize(d)?;
        let mut e = FreeElement::zero();
        for t in terms {
            e.add_term(t.word, t.coef);
        }
        Ok(e)
    }
}

/// Element of `U(L)` in PBW normal form: every word is non-decreasing in the
/// generator order.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct UEnvElement(FreeElement);

impl UEnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        UEnvElement(FreeElement::one())
    }

    pub fn generator(g: Generator) -> Self {
        UEnvElement(FreeElement::generator(g))
    }

    pub fn scalar(c: Scalar) -> Self {
        UEnvElement(FreeElement::scalar(c))
    }

    /// Wraps an element whose words are already non-decreasing.
    pub fn from_normal(e: FreeElement) -> Option<Self> {
        let normal = e.terms().all(|(w, _)| first_descent(w).is_none());
        normal.then_some(UEnvElement(e))
    }

    pub fn as_free(&self) -> &FreeElement {
        &self.0
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        UEnvElement(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        UEnvElement(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UEnvElement(self.0.scale(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        uenv_mul(self, other)
    }

    /// `g(x)` for a univariate polynomial `g` in the single variable of `poly`.
    pub fn poly_at(poly: &SparsePoly, x: Generator) -> Self {
        FreeElement::generator(x).eval_poly(&poly.univariate_coeffs()).normalize()
    }

    pub fn is_normal(&self) -> bool {
        self.0.terms().all(|(w, _)| first_descent(w).is_none())
    }
}

impl fmt::Display for UEnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn first_descent(w: &[Generator]) -> Option<usize> {
    w.windows(2).position(|p| p[0] > p[1])
}

/// Straightening by repeated adjacent swaps, `yx = xy + [y,x]`, always at
/// the leftmost descent. Pending terms are merged by word so cancellations
/// happen early.
fn straighten(input: BTreeMap<Word, Scalar>) -> FreeElement {
    let mut out = FreeElement::zero();
    let mut pending = input;
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let Some(i) = first_descent(&w) else {
            out.add_term(w, c);
            continue;
        };
        let mut push = |w: Word, c: Scalar| {
            let e = pending.entry(w).or_insert_with(Scalar::zero);
            *e += c;
        };
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        push(swapped, c.clone());
        for (z, k) in bracket(w[i], w[i + 1]).terms() {
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..i]);
            shorter.push(*z);
            shorter.extend_from_slice(&w[i + 2..]);
            push(shorter, &c * k);
        }
    }
    out
}

pub fn pbw_normalize(word: &[Generator]) -> UEnvElement {
    FreeElement::word(word.to_vec(), Scalar::one()).normalize()
}

pub fn uenv_mul(u: &UEnvElement, v: &UEnvElement) -> UEnvElement {
    u.0.mul(&v.0).normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use Generator as G;

    #[test]
    fn bracket_table_examples() {
        assert_eq!(bracket(G::l(1), G::l(2)), LElement::from_generator(G::l(3)));
        assert_eq!(bracket(G::d(2), G::b(3)), LElement::term(G::b(5), int(-1)));
        assert!(bracket(G::c(0), G::d(5)).is_zero());
        assert!(bracket(G::l(0), G::l(0)).is_zero());
        assert_eq!(bracket(G::l(2), G::c(-1)), LElement::term(G::c(1), int(-1)));
        assert_eq!(bracket(G::a(1), G::b(-3)), LElement::from_generator(G::c(-2)));
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_residual(G::l(1), G::l(2), G::l(3)).is_zero());
        assert!(jacobi_residual(G::d(0), G::a(1), G::b(2)).is_zero());
        assert!(jacobi_residual(G::l(1), G::d(0), G::a(2)).is_zero());
    }

    #[test]
    fn straightening_examples() {
        let ba = pbw_normalize(&[G::b(0), G::a(0)]);
        let expect = FreeElement::word(vec![G::a(0), G::b(0)], int(1))
            .add(&FreeElement::word(vec![G::c(0)], int(-1)));
        assert_eq!(ba.as_free(), &expect);

        let al = pbw_normalize(&[G::a(0), G::l(0)]);
        assert_eq!(al.as_free(), &FreeElement::word(vec![G::l(0), G::a(0)], int(1)));

        let ll = pbw_normalize(&[G::l(0), G::l(0)]);
        assert_eq!(ll.as_free(), &FreeElement::word(vec![G::l(0), G::l(0)], int(1)));
    }

    #[test]
    fn uenv_products() {
        let a = UEnvElement::generator(G::a(0));
        let b = UEnvElement::generator(G::b(0));
        assert_eq!(a.mul(&b).as_free(), &FreeElement::word(vec![G::a(0), G::b(0)], int(1)));
        assert_eq!(b.mul(&a), pbw_normalize(&[G::b(0), G::a(0)]));
        let u = pbw_normalize(&[G::d(1), G::l(-1), G::b(2)]);
        assert_eq!(UEnvElement::one().mul(&u), u);
        assert!(u.is_normal());
    }

    #[test]
    fn shifting_identity_for_witt_powers() {
        // x_n L_0^k = (L_0 - n)^k x_n
        let l0 = FreeElement::generator(G::l(0));
        for x in [G::a(2), G::b(-1), G::d(3)] {
            let lhs = FreeElement::generator(x).mul(&l0.pow(3)).normalize();
            let shifted = l0.sub(&FreeElement::scalar(int(x.index)));
            let rhs = shifted.pow(3).mul(&FreeElement::generator(x)).normalize();
            assert_eq!(lhs, rhs, "{x}");
        }
    }

    #[test]
    fn generator_text_round_trip() {
        for g in Generator::window(2) {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        assert!("x[1]".parse::<Generator>().is_err());
        assert!("L1".parse::<Generator>().is_err());
    }
}
