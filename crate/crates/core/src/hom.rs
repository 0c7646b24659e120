//! The algebra homomorphisms `U(L) -> R_2 ⊗ U(b)` and `U(L) -> R_0 ⊗ D`,
//! their verification on a window of generator pairs, and explicit
//! preimages of algebra generators of the targets.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{bracket, FreeElement, Generator, UEnvElement};
use crate::ops::{Algebra, Diff, OpElement, R0Diff, R2Ub, Ub, R0, R2};
use crate::poly::{signature, SparsePoly, Var};
use crate::scalar::{self, Scalar};

/// An assignment of target-algebra elements to the generators of `L`,
/// extended multiplicatively to words.
pub trait GeneratorMap {
    type Target: Algebra;

    fn image(&self, g: Generator) -> OpElement<Self::Target>;

    fn apply_free(&self, u: &FreeElement) -> OpElement<Self::Target> {
        let mut out = OpElement::zero();
        for (word, c) in u.terms() {
            let prod = word.iter().fold(OpElement::one(), |acc, g| acc.mul(&self.image(*g)));
            out = out.add(&prod.scale(c));
        }
        out
    }

    fn apply(&self, u: &UEnvElement) -> OpElement<Self::Target> {
        self.apply_free(u.as_free())
    }
}

/// `φ_{αβ}: U(L) -> R_2 ⊗ U(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAB {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl PhiAB {
    pub fn new(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidSpec("beta must be nonzero".into()));
        }
        Ok(PhiAB { alpha, beta })
    }
}

/// `x0^n (D0 + n α)` in `R_0` or `R_2`; the Witt part of both maps.
fn witt_image<V: crate::ops::WeylVars>(n: i64, alpha: &Scalar) -> OpElement<crate::ops::Weyl<V>> {
    use crate::ops::Weyl;
    let x = Weyl::<V>::coordinate(0, n);
    x.mul(&Weyl::<V>::euler(0).add(&OpElement::scalar(scalar::int(n) * alpha)))
}

impl GeneratorMap for PhiAB {
    type Target = R2Ub;

    fn image(&self, g: Generator) -> OpElement<R2Ub> {
        use crate::lie::Family::*;
        let n = g.index;
        let x0n = R2::coordinate(0, n);
        let one = OpElement::<Ub>::one();
        match g.family {
            L => R2Ub::left(&witt_image(n, &self.alpha)),
            D => R2Ub::left(&x0n.mul(&R2::euler(1))).add(&R2Ub::pure(&x0n, &Ub::e().scale(&scalar::int(n)))),
            A => {
                let x0n_x1 = x0n.mul(&R2::coordinate(1, 1));
                let first = R2Ub::left(&x0n_x1.mul(&R2::euler(1)).scale(&self.beta));
                let h_ne = Ub::h().sub(&Ub::e().scale(&scalar::int(n)));
                first.add(&R2Ub::pure(&x0n_x1, &h_ne))
            }
            B => R2Ub::pure(&x0n.mul(&R2::coordinate(1, -1)), &one),
            C => R2Ub::left(&x0n.scale(&-self.beta.clone())),
        }
    }
}

/// `φ_{αβγg}: U(L) -> R_0 ⊗ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiABGG {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    /// Polynomial in the single variable `t`.
    pub g: SparsePoly,
}

impl PhiABGG {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, g: SparsePoly) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidSpec("beta must be nonzero".into()));
        }
        check_t_poly(&g)?;
        Ok(PhiABGG { alpha, beta, gamma, g })
    }

    fn g_op(&self) -> OpElement<Diff> {
        t_poly_op(&self.g)
    }
}

pub(crate) fn check_t_poly(g: &SparsePoly) -> Result<()> {
    if g.vars().len() != 1 || g.vars()[0].laurent {
        return Err(Error::VariableMismatch(format!("g must be a polynomial in one variable, got {:?}", g.vars())));
    }
    Ok(())
}

/// A univariate polynomial as a multiplication operator in `D`.
pub fn t_poly_op(g: &SparsePoly) -> OpElement<Diff> {
    let mut out = OpElement::zero();
    for (k, c) in g.univariate_coeffs().iter().enumerate() {
        out = out.add(&Diff::coordinate(0, k as i64).scale(c));
    }
    out
}

/// The polynomial ring `C[t]` used for `g`.
pub fn t_signature() -> crate::poly::Signature {
    signature(vec![Var::poly("t")])
}

impl GeneratorMap for PhiABGG {
    type Target = R0Diff;

    fn image(&self, g: Generator) -> OpElement<R0Diff> {
        use crate::lie::Family::*;
        let n = g.index;
        let x0n = R0::coordinate(0, n);
        let t = Diff::coordinate(0, 1);
        let beta_inv = self.beta.recip();
        match g.family {
            L => R0Diff::left(&witt_image(n, &self.alpha)),
            D => {
                let right = t
                    .mul(&self.g_op())
                    .add(&OpElement::scalar(self.gamma.clone()))
                    .scale(&beta_inv)
                    .add(&Diff::euler(0));
                R0Diff::pure(&x0n, &right)
            }
            A => R0Diff::pure(&x0n, &t),
            B => R0Diff::pure(&x0n, &self.g_op().add(&Diff::derivative(0, 1).scale(&self.beta))),
            C => R0Diff::left(&x0n.scale(&-self.beta.clone())),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomViolation {
    pub x: Generator,
    pub y: Generator,
    /// `φ([x,y])`.
    pub expected: String,
    /// `[φ(x), φ(y)]`.
    pub actual: String,
}

/// Checks `[φ(x), φ(y)] = φ([x,y])` for every pair of generators with
/// indices in `[-window, window]`.
pub fn verify_hom<M: GeneratorMap>(map: &M, window: i64) -> Vec<HomViolation> {
    let gens = Generator::window(window);
    let images: Vec<_> = gens.iter().map(|g| map.image(*g)).collect();
    let mut out = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate().skip(i + 1) {
            let actual = images[i].commutator(&images[j]);
            let expected = map.apply_free(&FreeElement::from_lie(&bracket(*x, *y)));
            if actual != expected {
                out.push(HomViolation { x: *x, y: *y, expected: expected.to_string(), actual: actual.to_string() });
            }
        }
    }
    out
}

/// An element of the target together with an explicit preimage.
#[derive(Clone, Debug)]
pub struct Witness<A: Algebra> {
    pub label: &'static str,
    pub target: OpElement<A>,
    pub preimage: UEnvElement,
}

impl<A: Algebra> Witness<A> {
    pub fn holds<M: GeneratorMap<Target = A>>(&self, map: &M) -> bool {
        map.apply(&self.preimage) == self.target
    }
}

fn word(gens: &[Generator]) -> UEnvElement {
    crate::lie::pbw_normalize(gens)
}

/// Preimages of `x0^{±1}⊗1`, `∂_{x0}⊗1`, `x1⊗e`, `x1^{-1}⊗1`, `1⊗e`, `1⊗h`
/// and `∂_{x1}⊗1`. The two signs of `x0^{±1}` share one label.
pub fn image_witnesses(map: &PhiAB) -> Vec<Witness<R2Ub>> {
    use Generator as G;
    let bi = map.beta.recip();
    let m_bi = -bi.clone();
    let one = OpElement::<Ub>::one();
    let x1e_pre = word(&[G::c(-1), G::a(1)]).sub(&word(&[G::c(0), G::a(0)])).scale(&bi);
    vec![
        Witness {
            label: "x0^{±1}⊗1",
            target: R2Ub::left(&R2::coordinate(0, 1)),
            preimage: word(&[G::c(1)]).scale(&m_bi),
        },
        Witness {
            label: "x0^{±1}⊗1",
            target: R2Ub::left(&R2::coordinate(0, -1)),
            preimage: word(&[G::c(-1)]).scale(&m_bi),
        },
        Witness {
            label: "∂_{x0}⊗1",
            target: R2Ub::left(&R2::derivative(0, 1)),
            preimage: word(&[G::c(-1), G::l(0)]).scale(&m_bi),
        },
        Witness { label: "x1⊗e", target: R2Ub::pure(&R2::coordinate(1, 1), &Ub::e()), preimage: x1e_pre.clone() },
        Witness { label: "x1^{-1}⊗1", target: R2Ub::pure(&R2::coordinate(1, -1), &one), preimage: word(&[G::b(0)]) },
        Witness { label: "1⊗e", target: R2Ub::right(&Ub::e()), preimage: x1e_pre.mul(&word(&[G::b(0)])) },
        Witness {
            label: "1⊗h",
            target: R2Ub::right(&Ub::h()),
            preimage: word(&[G::b(0), G::a(0)]).sub(&word(&[G::d(0)]).scale(&map.beta)),
        },
        Witness { label: "∂_{x1}⊗1", target: R2Ub::left(&R2::derivative(1, 1)), preimage: word(&[G::b(0), G::d(0)]) },
    ]
}

/// Preimages of the algebra generators `x0^{±1}⊗1`, `∂0⊗1`, `1⊗t`, `1⊗∂t`
/// of `R_0 ⊗ D`.
pub fn surjectivity_witnesses(map: &PhiABGG) -> Vec<Witness<R0Diff>> {
    use Generator as G;
    let bi = map.beta.recip();
    let m_bi = -bi.clone();
    let g_a0 = UEnvElement::poly_at(&map.g, G::a(0));
    vec![
        Witness {
            label: "x0^{±1}⊗1",
            target: R0Diff::left(&R0::coordinate(0, 1)),
            preimage: word(&[G::c(1)]).scale(&m_bi),
        },
        Witness {
            label: "x0^{±1}⊗1",
            target: R0Diff::left(&R0::coordinate(0, -1)),
            preimage: word(&[G::c(-1)]).scale(&m_bi),
        },
        Witness { label: "∂0⊗1", target: R0Diff::left(&R0::euler(0)), preimage: word(&[G::l(0)]) },
        Witness { label: "1⊗t", target: R0Diff::right(&Diff::coordinate(0, 1)), preimage: word(&[G::a(0)]) },
        Witness {
            label: "1⊗∂t",
            target: R0Diff::right(&Diff::derivative(0, 1)),
            preimage: word(&[G::b(0)]).sub(&g_a0).scale(&bi),
        },
    ]
}

/// Parses an element of `U(L)` such as `"b[0]*a[0] - 3*d[0]"`, or the
/// shorthand `"Q"` for `b[0]*a[0] + c[0]*d[0]`.
pub fn parse_uenv(text: &str) -> Result<FreeElement> {
    crate::expr::evaluate(&UInterpreter, &crate::expr::parse(text)?)
}

/// `Q = b_0 a_0 + c_0 d_0`.
pub fn q_element() -> FreeElement {
    use Generator as G;
    FreeElement::word(vec![G::b(0), G::a(0)], Scalar::one()).add(&FreeElement::word(vec![G::c(0), G::d(0)], Scalar::one()))
}

struct UInterpreter;

impl crate::expr::Interpreter for UInterpreter {
    type Value = FreeElement;

    fn constant(&self, c: Scalar) -> FreeElement {
        FreeElement::scalar(c)
    }
    fn atom(&self, name: &str, index: Option<i64>, exp: i64) -> Result<FreeElement> {
        if exp < 0 {
            return Err(Error::Parse(format!("negative power of {name} in U(L)")));
        }
        let base = match (name, index) {
            ("Q", None) => q_element(),
            (_, Some(n)) => FreeElement::generator(format!("{name}[{n}]").parse()?),
            _ => return Err(Error::Parse(format!("expected an indexed generator like a[0], got {name:?}"))),
        };
        Ok(base.pow(exp as u32))
    }
    fn add(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.add(b)
    }
    fn mul(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.mul(b)
    }
    fn scale(&self, a: &FreeElement, c: &Scalar) -> FreeElement {
        a.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use Generator as G;

    fn phi_ab() -> PhiAB {
        PhiAB::new(frac(1, 2), int(3)).unwrap()
    }

    fn phi_abgg() -> PhiABGG {
        let g = SparsePoly::parse(&t_signature(), "t^2 + 1").unwrap();
        PhiABGG::new(frac(1, 2), int(3), int(-2), g).unwrap()
    }

    #[test]
    fn generator_images() {
        let m = phi_ab();
        assert_eq!(m.image(G::c(2)), OpElement::parse("-3*(x0^2)⊗(1)").unwrap());
        let mut m2 = m.clone();
        m2.alpha = int(7);
        assert_eq!(m2.image(G::l(0)), OpElement::parse("(D0)⊗(1)").unwrap());
        let pre = parse_uenv("b[0]*a[0] - 3*d[0]").unwrap().normalize();
        assert_eq!(m.apply(&pre), OpElement::parse("(1)⊗(h)").unwrap());
    }

    #[test]
    fn second_map_images() {
        let m = phi_abgg();
        assert_eq!(m.image(G::a(0)), OpElement::parse("(1)⊗(t)").unwrap());
        assert_eq!(m.image(G::c(1)), OpElement::parse("(-3x0)⊗(1)").unwrap());
        let pre = parse_uenv("b[0] - a[0]^2 - 1").unwrap().normalize();
        assert_eq!(m.apply(&pre), OpElement::parse("(1)⊗(3dt)").unwrap());
    }

    #[test]
    fn second_map_is_homomorphism_on_small_window() {
        let v = verify_hom(&phi_abgg(), 2);
        assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
    }

    /// The table for the first map is multiplicative only modulo `e`: the
    /// defects are exactly these `⊗e` terms.
    #[test]
    fn first_map_defects_are_pure_e_terms() {
        let m = phi_ab();
        let e = |x: OpElement<R2>| R2Ub::pure(&x, &Ub::e());
        let mono = |n0: i64, n1: i64| R2::coordinate(0, n0).mul(&R2::coordinate(1, n1));
        let mut expected = 0;
        for p in -2..=2i64 {
            for q in -2..=2i64 {
                let defect = |x: G, y: G| {
                    m.image(x).commutator(&m.image(y)).sub(&m.apply_free(&FreeElement::from_lie(&bracket(x, y))))
                };
                let k = int(p * q);
                assert_eq!(defect(G::l(p), G::a(q)), e(mono(p + q, 1)).scale(&k));
                assert_eq!(defect(G::l(p), G::d(q)), e(mono(p + q, 0)).scale(&-k));
                let aa = (&m.beta + int(1)) * int(p - q);
                assert_eq!(defect(G::a(p), G::a(q)), e(mono(p + q, 2)).scale(&aa));
                expected += 2 * usize::from(p * q != 0) + usize::from(p < q);
            }
        }
        let v = verify_hom(&m, 2);
        assert_eq!(v.len(), expected);
        use crate::lie::Family::*;
        assert!(v.iter().all(|x| matches!((x.x.family, x.y.family), (L, A) | (L, D) | (A, A))));
    }

    #[test]
    fn witnesses_round_trip() {
        let m = phi_ab();
        let w = image_witnesses(&m);
        assert_eq!(w.len(), 8);
        assert!(w.iter().all(|w| w.holds(&m)));
        let m = phi_abgg();
        let w = surjectivity_witnesses(&m);
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|w| w.holds(&m)));
    }

    #[test]
    fn zero_beta_rejected() {
        assert!(PhiAB::new(int(1), int(0)).is_err());
    }
}
