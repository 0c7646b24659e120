//! Modules `F(P, V)` obtained by pulling an `R_2 ⊗ U(b)`-module `P ⊗ V`
//! back along [`PhiAB`].
//!
//! `P` is built from two rank-one coordinates. A weight coordinate is the
//! Laurent space `C[x_i^{±1}]` where `x_i^k` stands for `x_i^{w_i + k}`; a
//! shift coordinate is `C[D_i]` with `D_i = x_i ∂_{x_i}` acting by
//! multiplication and `x_i^n f(D_i) = λ_i^n f(D_i - n)`. `V` is either the
//! one-dimensional `C_ε` (`e = 0`, `h = ε`) or the Whittaker-type module
//! `C[h]` with `e: f(h) ↦ f(h-1)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::{q_element, GeneratorMap, PhiAB};
use crate::lie::Generator;
use crate::module::LModule;
use crate::ops::{OpElement, R2Ub, WeylMonomial};
use crate::poly::{signature, Signature, SparsePoly, Var};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coordinate {
    /// `C[x^{±1}] x^w`.
    Weight(Scalar),
    /// `C[D]` with `x^n f(D) = λ^n f(D - n)`; `λ ≠ 0`.
    Shift(Scalar),
}

impl Coordinate {
    fn var(&self, i: usize) -> Var {
        match self {
            Coordinate::Weight(_) => Var::laurent(&format!("x{i}")),
            Coordinate::Shift(_) => Var::poly(&format!("D{i}")),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Coordinate::Shift(l) if l.is_zero() => Err(Error::InvalidSpec("lambda must be nonzero".into())),
            _ => Ok(()),
        }
    }

    /// `x^a ∂_x^b` applied to `v` in variable `idx`.
    fn apply(&self, a: i64, b: u32, v: &SparsePoly, idx: usize) -> Result<SparsePoly> {
        let mut cur = v.clone();
        match self {
            Coordinate::Weight(w) => {
                for _ in 0..b {
                    let mut next = SparsePoly::zero(cur.vars());
                    for (e, c) in cur.terms() {
                        let mut e2 = e.clone();
                        e2[idx] -= 1;
                        next.add_term(e2, c * (w + scalar::int(e[idx])));
                    }
                    cur = next;
                }
                cur.shift_exponent(idx, a)
            }
            Coordinate::Shift(l) => {
                let d_plus_one = {
                    let mut p = SparsePoly::var(cur.vars(), idx);
                    p.add_term(vec![0; cur.vars().len()], Scalar::one());
                    p
                };
                for _ in 0..b {
                    cur = d_plus_one.try_mul(&cur.shift(idx, &-Scalar::one())?)?.scale(&l.recip());
                }
                Ok(cur.shift(idx, &scalar::int(a))?.scale(&scalar::pow(l, a)))
            }
        }
    }
}

/// A simple `R_2`-module given coordinate-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModule {
    pub coords: [Coordinate; 2],
}

impl RModule {
    /// `M_w = ⊕ C x0^{w0+n0} x1^{w1+n1}`.
    pub fn weighted(w0: Scalar, w1: Scalar) -> Self {
        RModule { coords: [Coordinate::Weight(w0), Coordinate::Weight(w1)] }
    }

    /// `Ω(λ0, λ1) = C[D0, D1]`.
    pub fn shift(l0: Scalar, l1: Scalar) -> Result<Self> {
        let m = RModule { coords: [Coordinate::Shift(l0), Coordinate::Shift(l1)] };
        m.coords.iter().try_for_each(Coordinate::validate)?;
        Ok(m)
    }

    /// `P0 ⊗ M_w` with `P0` a rank-one `R_0`-module.
    pub fn split(p0: Coordinate, w: Scalar) -> Result<Self> {
        p0.validate()?;
        Ok(RModule { coords: [p0, Coordinate::Weight(w)] })
    }

    fn apply(&self, m: &WeylMonomial, v: &SparsePoly) -> Result<SparsePoly> {
        let mut cur = v.clone();
        for i in 0..2 {
            cur = self.coords[i].apply(m.xexp[i], m.dexp[i], &cur, i)?;
        }
        Ok(cur)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UbModule {
    /// `h = ε`, `e = 0`.
    OneDim(Scalar),
    /// `C[h]`, `h` by multiplication, `e: f(h) ↦ f(h-1)`.
    Whittaker,
}

impl UbModule {
    /// `h^i e^j` applied in variable `idx` (ignored for the 1-dimensional module).
    pub fn apply(&self, (i, j): (u32, u32), v: &SparsePoly, idx: usize) -> Result<SparsePoly> {
        match self {
            UbModule::OneDim(eps) => {
                if j > 0 {
                    Ok(SparsePoly::zero(v.vars()))
                } else {
                    Ok(v.scale(&scalar::pow(eps, i as i64)))
                }
            }
            UbModule::Whittaker => v.shift(idx, &scalar::int(j as i64))?.shift_exponent(idx, i as i64),
        }
    }

    pub fn apply_element(&self, u: &OpElement<crate::ops::Ub>, v: &SparsePoly, idx: usize) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(v.vars());
        for (m, c) in u.terms() {
            out.add_scaled(&self.apply(*m, v, idx)?, c);
        }
        Ok(out)
    }
}

/// `F_{αβ}(P, V)`.
#[derive(Clone, Debug)]
pub struct FModule {
    pub phi: PhiAB,
    pub p: RModule,
    pub v: UbModule,
    sig: Signature,
}

impl FModule {
    pub fn new(alpha: Scalar, beta: Scalar, p: RModule, v: UbModule) -> Result<Self> {
        let phi = PhiAB::new(alpha, beta)?;
        p.coords.iter().try_for_each(Coordinate::validate)?;
        let mut vars = vec![p.coords[0].var(0), p.coords[1].var(1)];
        if v == UbModule::Whittaker {
            vars.push(Var::poly("h"));
        }
        Ok(FModule { phi, p, v, sig: signature(vars) })
    }

    pub fn alpha(&self) -> &Scalar {
        &self.phi.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.phi.beta
    }

    /// Applies an element of `R_2 ⊗ U(b)` to a vector of `P ⊗ V`.
    pub fn apply_op(&self, u: &OpElement<R2Ub>, v: &SparsePoly) -> Result<SparsePoly> {
        self.check_vector(v)?;
        let mut out = SparsePoly::zero(&self.sig);
        for ((wm, um), c) in u.terms() {
            let w = self.v.apply(*um, v, 2)?;
            if w.is_zero() {
                continue;
            }
            out.add_scaled(&self.p.apply(wm, &w)?, c);
        }
        Ok(out)
    }

    /// The vector `p ⊗ 1` (with `1 ∈ V`) for a monomial exponent of `P`.
    pub fn basis_vector(&self, n0: i64, n1: i64) -> SparsePoly {
        let mut e = vec![n0, n1];
        if self.v == UbModule::Whittaker {
            e.push(0);
        }
        SparsePoly::monomial(&self.sig, e, Scalar::one())
    }
}

impl LModule for FModule {
    fn signature(&self) -> Signature {
        self.sig.clone()
    }

    fn act(&self, g: Generator, v: &SparsePoly) -> Result<SparsePoly> {
        self.apply_op(&self.phi.image(g), v)
    }

    fn name(&self) -> String {
        let p = match &self.p.coords {
            [Coordinate::Weight(a), Coordinate::Weight(b)] => {
                format!("M({}, {})", scalar::format(a), scalar::format(b))
            }
            [Coordinate::Shift(a), Coordinate::Shift(b)] => {
                format!("Omega({}, {})", scalar::format(a), scalar::format(b))
            }
            [c0, Coordinate::Weight(w)] => {
                let p0 = match c0 {
                    Coordinate::Weight(a) => format!("M({})", scalar::format(a)),
                    Coordinate::Shift(l) => format!("Omega({})", scalar::format(l)),
                };
                format!("{p0} ⊗ M({})", scalar::format(w))
            }
            _ => "P".into(),
        };
        let v = match &self.v {
            UbModule::OneDim(e) => format!("C_{}", scalar::format(e)),
            UbModule::Whittaker => "Whittaker".into(),
        };
        format!("F[{}, {}]({p}, {v})", scalar::format(self.alpha()), scalar::format(self.beta()))
    }
}

/// `Q = b_0 a_0 + c_0 d_0` applied to `v`.
pub fn q_action(m: &FModule, v: &SparsePoly) -> Result<SparsePoly> {
    m.act_free(&q_element(), v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsilonVerdict {
    Simple,
    /// `β w + β n + ε = 0` at `witness`; the vectors of `x1`-degree at most
    /// `witness` span a proper submodule, generated by `generator`.
    NotSimple { witness: i64, generator: SparsePoly },
}

/// Simplicity of `F(P0 ⊗ M_w, C_ε)`: it fails exactly when `-ε/β - w` is an
/// integer.
pub fn epsilon_simplicity(m: &FModule) -> Result<EpsilonVerdict> {
    let Coordinate::Weight(w) = &m.p.coords[1] else {
        return Err(Error::NotApplicable("second coordinate of P must be a weight coordinate".into()));
    };
    let UbModule::OneDim(eps) = &m.v else {
        return Err(Error::NotApplicable("V must be one-dimensional".into()));
    };
    let n = -(eps / m.beta()) - w;
    Ok(match scalar::is_integer_valued(&n) {
        None => EpsilonVerdict::Simple,
        Some(k) => EpsilonVerdict::NotSimple { witness: k, generator: m.basis_vector(0, k) },
    })
}

/// Joint `(L_0, d_0)`-eigenvalue of `v`, if `v` is a weight vector.
pub fn weight_of(m: &FModule, v: &SparsePoly) -> Result<Option<(Scalar, Scalar)>> {
    let eig = |g: Generator| -> Result<Option<Scalar>> {
        let w = m.act(g, v)?;
        let Some((e, c)) = v.terms().next_back() else {
            return Err(Error::ZeroVector);
        };
        let ratio = w.coeff(e) / c;
        Ok((w == v.scale(&ratio)).then_some(ratio))
    };
    Ok(match (eig(Generator::l(0))?, eig(Generator::d(0))?) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    })
}

/// Groups `basis` by joint `(L_0, d_0)`-eigenvalue.
pub fn weight_decomposition(
    m: &FModule,
    basis: &[SparsePoly],
) -> Result<BTreeMap<(Scalar, Scalar), Vec<SparsePoly>>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for v in basis {
        match weight_of(m, v)? {
            Some(w) => out.entry(w).or_default().push(v.clone()),
            None => return Err(Error::NotWeight(format!("{v} is not an eigenvector of L[0] and d[0]"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Generator as G;
    use crate::module::{module_axiom_check, monomial_basis};
    use crate::scalar::{frac, int};

    fn weighted(eps: Scalar) -> FModule {
        FModule::new(frac(1, 2), int(3), RModule::weighted(frac(1, 3), frac(-2, 5)), UbModule::OneDim(eps)).unwrap()
    }

    #[test]
    fn weighted_action_closed_form() {
        let (beta, w0, w1, eps, alpha) = (int(3), frac(1, 3), frac(-2, 5), frac(7, 2), frac(1, 2));
        let m = weighted(eps.clone());
        for (n0, n1) in [(0, 0), (2, -1), (-3, 4)] {
            let v = m.basis_vector(n0, n1);
            for n in -2..=2 {
                let act = |g| m.act(g, &v).unwrap();
                let at = |k0, k1, c: Scalar| m.basis_vector(k0, k1).scale(&c);
                let b_n1 = &beta * (&w1 + int(n1));
                assert_eq!(act(G::a(n)), at(n + n0, n1 + 1, b_n1 + &eps));
                assert_eq!(act(G::b(n)), at(n + n0, n1 - 1, int(1)));
                assert_eq!(act(G::c(n)), at(n + n0, n1, -beta.clone()));
                assert_eq!(act(G::d(n)), at(n + n0, n1, &w1 + int(n1)));
                assert_eq!(act(G::l(n)), at(n + n0, n1, &w0 + int(n0) + int(n) * &alpha));
            }
        }
    }

    #[test]
    fn shift_action_closed_form() {
        let (l0, l1, beta, eps, alpha) = (int(2), frac(-1, 3), int(3), int(5), frac(1, 2));
        let m = FModule::new(alpha.clone(), beta.clone(), RModule::shift(l0.clone(), l1.clone()).unwrap(), UbModule::OneDim(eps.clone()))
            .unwrap();
        let sig = m.signature();
        let f = SparsePoly::parse(&sig, "D0^2*D1 - D1 + 3").unwrap();
        let sub = |a: i64, b: i64| f.shift(0, &int(a)).unwrap().shift(1, &int(b)).unwrap();
        let d0 = SparsePoly::var(&sig, 0);
        let d1 = SparsePoly::var(&sig, 1);
        for n in -2..=2 {
            let l0n = scalar::pow(&l0, n);
            assert_eq!(m.act(G::b(n), &f).unwrap(), sub(n, -1).scale(&(&l0n / &l1)));
            assert_eq!(m.act(G::c(n), &f).unwrap(), sub(n, 0).scale(&(-&beta * &l0n)));
            let lin = &(&d0 - &SparsePoly::constant(&sig, int(n))) + &SparsePoly::constant(&sig, int(n) * &alpha);
            assert_eq!(m.act(G::l(n), &f).unwrap(), (&lin * &sub(n, 0)).scale(&l0n));
            assert_eq!(m.act(G::d(n), &f).unwrap(), (&d1 * &sub(n, 0)).scale(&l0n));
            let a_coef = &(&d1 - &SparsePoly::one(&sig)).scale(&beta) + &SparsePoly::constant(&sig, eps.clone());
            assert_eq!(m.act(G::a(n), &f).unwrap(), (&a_coef * &sub(n, 1)).scale(&(&l0n * &l1)));
        }
    }

    #[test]
    fn c_zero_is_minus_beta() {
        let m = weighted(int(0));
        let v = SparsePoly::parse(&m.signature(), "x0^-1*x1^2 + 4x0").unwrap();
        assert_eq!(m.act(G::c(0), &v).unwrap(), v.scale(&int(-3)));
    }

    #[test]
    fn one_dimensional_v_gives_modules() {
        for m in [
            weighted(frac(7, 2)),
            FModule::new(int(1), frac(-1, 2), RModule::shift(int(2), int(3)).unwrap(), UbModule::OneDim(int(1))).unwrap(),
            FModule::new(int(0), int(2), RModule::split(Coordinate::Shift(int(-1)), frac(1, 2)).unwrap(), UbModule::OneDim(int(4)))
                .unwrap(),
        ] {
            let basis = monomial_basis(&m.signature(), 2);
            assert!(module_axiom_check(&m, 1, &basis).unwrap().is_empty(), "{}", m.name());
        }
    }

    #[test]
    fn whittaker_v_breaks_the_representation_property() {
        let m = FModule::new(int(0), int(2), RModule::weighted(int(0), int(0)), UbModule::Whittaker).unwrap();
        let v = module_axiom_check(&m, 1, &[m.basis_vector(0, 0)]).unwrap();
        assert!(v.iter().any(|x| x.x == G::l(1) && x.y == G::a(1)));
        assert!(v.iter().all(|x| x.x.index != 0 || x.x.family == crate::lie::Family::A));
    }

    #[test]
    fn q_is_epsilon_on_one_dimensional_v() {
        let m = weighted(frac(7, 2));
        let v = SparsePoly::parse(&m.signature(), "x0*x1^-2 - 5x1").unwrap();
        assert_eq!(q_action(&m, &v).unwrap(), v.scale(&frac(7, 2)));
        let m0 = weighted(int(0));
        assert!(q_action(&m0, &v).unwrap().is_zero());
    }

    #[test]
    fn q_is_multiplication_by_h_on_whittaker() {
        let m = FModule::new(int(1), int(2), RModule::weighted(int(0), frac(1, 2)), UbModule::Whittaker).unwrap();
        let p = m.basis_vector(1, -1);
        let h = SparsePoly::var(&m.signature(), 2);
        assert_eq!(q_action(&m, &p).unwrap(), &p * &h);
    }

    #[test]
    fn epsilon_simplicity_examples() {
        let mk = |beta: i64, w: Scalar, eps: i64| {
            FModule::new(int(0), int(beta), RModule::split(Coordinate::Weight(int(0)), w).unwrap(), UbModule::OneDim(int(eps)))
                .unwrap()
        };
        assert_eq!(epsilon_simplicity(&mk(1, frac(1, 2), 0)).unwrap(), EpsilonVerdict::Simple);
        assert!(matches!(epsilon_simplicity(&mk(1, int(2), -3)).unwrap(), EpsilonVerdict::NotSimple { witness: 1, .. }));
        assert_eq!(epsilon_simplicity(&mk(2, int(0), 1)).unwrap(), EpsilonVerdict::Simple);
    }

    #[test]
    fn weight_spaces() {
        let m = weighted(int(0));
        let basis = monomial_basis(&m.signature(), 1);
        let dec = weight_decomposition(&m, &basis).unwrap();
        assert_eq!(dec.len(), basis.len());
        let v = m.basis_vector(1, -1);
        assert_eq!(weight_of(&m, &v).unwrap(), Some((frac(1, 3) + int(1), frac(-2, 5) - int(1))));
        let sh = FModule::new(int(0), int(1), RModule::shift(int(2), int(3)).unwrap(), UbModule::OneDim(int(0))).unwrap();
        let basis = monomial_basis(&sh.signature(), 1);
        assert!(matches!(weight_decomposition(&sh, &basis), Err(Error::NotWeight(_))));
    }
}
