//! The modules `Ω(α, β, γ, λ, g)` on `C[s, t]`:
//!
//! ```text
//! L_n f = λ^n (s + nα) f(s-n, t)
//! d_n f = λ^n β⁻¹ (t g(t) + γ) f(s-n, t) + λ^n t ∂_t f(s-n, t)
//! a_n f = λ^n t f(s-n, t)
//! b_n f = λ^n g(t) f(s-n, t) + λ^n β ∂_t f(s-n, t)
//! c_n f = -λ^n β f(s-n, t)
//! ```
//!
//! together with the constructive simplicity reduction, generation from 1,
//! the rank over `U(C L_0 ⊕ C d_0)`, and recognition of rank-one
//! `U(C L_0 ⊕ C a_0)`-free modules from their structure functions.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{check_t_poly, t_signature};
use crate::lie::{bracket, FreeElement, Generator};
use crate::linalg;
use crate::module::{Certificate, LModule};
use crate::poly::{signature, Signature, SparsePoly, Var};
use crate::scalar::{self, Scalar};
use crate::vandermonde::FunctionFamily;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub lambda: Scalar,
    /// Polynomial in `t`.
    pub g: SparsePoly,
}

impl OmegaParams {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, lambda: Scalar, g: SparsePoly) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidSpec("beta must be nonzero".into()));
        }
        if lambda.is_zero() {
            return Err(Error::InvalidSpec("lambda must be nonzero".into()));
        }
        check_t_poly(&g)?;
        Ok(OmegaParams { alpha, beta, gamma, lambda, g })
    }

    /// Degree of `g`, or `None` when `g = 0`.
    pub fn deg_g(&self) -> Option<u32> {
        self.g.degree_in(0).map(|d| d as u32)
    }

    /// `β⁻¹(b_0 - g(a_0))`, which acts on `C[t]` as `∂_t`.
    pub fn dt_op(&self) -> FreeElement {
        let a0 = FreeElement::generator(Generator::a(0));
        let g_a0 = a0.eval_poly(&self.g.univariate_coeffs());
        FreeElement::generator(Generator::b(0)).sub(&g_a0).scale(&self.beta.recip())
    }
}

impl std::fmt::Display for OmegaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Omega(alpha={}, beta={}, gamma={}, lambda={}, g={})",
            scalar::format(&self.alpha),
            scalar::format(&self.beta),
            scalar::format(&self.gamma),
            scalar::format(&self.lambda),
            self.g
        )
    }
}

/// One `Ω` tensor factor acting on the variables `si`, `ti` of `f`;
/// `g_emb` is `g(t_i)` over the signature of `f`.
pub(crate) fn factor_act(
    p: &OmegaParams,
    g_emb: &SparsePoly,
    si: usize,
    ti: usize,
    x: Generator,
    f: &SparsePoly,
) -> Result<SparsePoly> {
    use crate::lie::Family::*;
    let n = x.index;
    let sig = f.vars().clone();
    let lam_n = scalar::pow(&p.lambda, n);
    let shifted = f.shift(si, &scalar::int(n))?;
    let t_times = |h: &SparsePoly| h.shift_exponent(ti, 1);
    let out = match x.family {
        L => {
            let mut lin = SparsePoly::var(&sig, si);
            lin.add_term(vec![0; sig.len()], scalar::int(n) * &p.alpha);
            lin.try_mul(&shifted)?
        }
        D => {
            let mut tg = t_times(g_emb)?;
            tg.add_term(vec![0; sig.len()], p.gamma.clone());
            let mut out = tg.try_mul(&shifted)?.scale(&p.beta.recip());
            out.add_scaled(&t_times(&shifted.derive(ti)?)?, &Scalar::one());
            out
        }
        A => t_times(&shifted)?,
        B => {
            let mut out = g_emb.try_mul(&shifted)?;
            out.add_scaled(&shifted.derive(ti)?, &p.beta);
            out
        }
        C => shifted.scale(&-p.beta.clone()),
    };
    Ok(out.scale(&lam_n))
}

#[derive(Clone, Debug)]
pub struct OmegaModule {
    pub params: OmegaParams,
    sig: Signature,
    g_emb: SparsePoly,
}

pub fn st_signature() -> Signature {
    signature(vec![Var::poly("s"), Var::poly("t")])
}

impl OmegaModule {
    pub fn new(params: OmegaParams) -> Self {
        let sig = st_signature();
        let g_emb = params.g.embed(&sig, &[1]);
        OmegaModule { params, sig, g_emb }
    }

    pub fn one(&self) -> SparsePoly {
        SparsePoly::one(&self.sig)
    }

    pub fn monomial(&self, p: i64, q: i64) -> SparsePoly {
        SparsePoly::monomial(&self.sig, vec![p, q], Scalar::one())
    }
}

impl LModule for OmegaModule {
    fn signature(&self) -> Signature {
        self.sig.clone()
    }

    fn act(&self, g: Generator, v: &SparsePoly) -> Result<SparsePoly> {
        self.check_vector(v)?;
        factor_act(&self.params, &self.g_emb, 0, 1, g, v)
    }

    fn name(&self) -> String {
        self.params.to_string()
    }
}

pub(crate) fn generator_combination(family: crate::lie::Family, coeffs: &[Scalar], start: i64) -> FreeElement {
    let mut op = FreeElement::zero();
    for (i, c) in coeffs.iter().enumerate() {
        op.add_term(vec![Generator::new(family, start + i as i64)], c.clone());
    }
    op
}

/// Certificate taking a nonzero `f` to exactly `1`: a `c`-window extracts
/// the top `s`-coefficient (a nonzero polynomial in `t`), then `∂_t` steps
/// reach a constant, then a rescaling.
pub fn omega_reduce_to_one(m: &OmegaModule, f: &SparsePoly) -> Result<Certificate> {
    m.check_vector(f)?;
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    let p = &m.params;
    let mut cert = Certificate::new(f.clone());
    let top = f.degree_in(0).unwrap_or(0) as u32;
    if top > 0 {
        // n^top λ^n component of c_n f is -β (-1)^top [s^top] f
        let fam = FunctionFamily::new(std::slice::from_ref(&p.lambda), &[top]);
        let sign = if top.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
        let norm = sign / -p.beta.clone();
        let kappa: Vec<Scalar> = fam.dual(0, top)?.iter().map(|k| k * &norm).collect();
        cert.push(m, format!("c-window of size {}: top s-coefficient", top + 1), generator_combination(crate::lie::Family::C, &kappa, 0))?;
    }
    let dt = p.dt_op();
    while !cert.result.is_constant() {
        cert.push(m, "d/dt = (b[0] - g(a[0]))/beta", dt.clone())?;
    }
    let c = cert.result.constant_term();
    if !c.is_one() {
        cert.push(m, "rescale", FreeElement::scalar(c.recip()))?;
    }
    debug_assert_eq!(cert.result, m.one());
    Ok(cert)
}

/// Certificate producing `s^p t^q` from `1` as `L_0^p a_0^q · 1`.
pub fn omega_generate(m: &OmegaModule, p: u32, q: u32) -> Result<Certificate> {
    let mut cert = Certificate::new(m.one());
    for _ in 0..q {
        cert.push(m, "a[0]", FreeElement::generator(Generator::a(0)))?;
    }
    for _ in 0..p {
        cert.push(m, "L[0]", FreeElement::generator(Generator::l(0)))?;
    }
    Ok(cert)
}

/// Variables `L0, d0` of the commutative algebra `U(C L_0 ⊕ C d_0)`.
pub fn uh_signature() -> Signature {
    signature(vec![Var::poly("L0"), Var::poly("d0")])
}

/// `t^k = Σ_j P_j(L_0, d_0) t^j` over the basis `1, t, …, t^{deg g}`.
#[derive(Clone, Debug, Serialize)]
pub struct UhExpression {
    pub k: u32,
    pub coefficients: Vec<SparsePoly>,
}

impl UhExpression {
    /// `Σ_j P_j(L_0, d_0) a_0^j`, which maps `1` to `t^k`.
    pub fn as_operator(&self) -> FreeElement {
        let mut op = FreeElement::zero();
        for (j, pj) in self.coefficients.iter().enumerate() {
            for (e, c) in pj.terms() {
                let mut word = vec![Generator::l(0); e[0] as usize];
                word.extend(std::iter::repeat_n(Generator::d(0), e[1] as usize));
                word.extend(std::iter::repeat_n(Generator::a(0), j));
                op.add_term(word, c.clone());
            }
        }
        op
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceCheck {
    /// Number of vectors `L_0^i d_0^j t^k` tested.
    pub columns: usize,
    pub max_uh_degree: u32,
    pub nullity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UhRank {
    pub rank: usize,
    pub expressions: Vec<UhExpression>,
    pub certificates: Vec<Certificate>,
    pub independence: IndependenceCheck,
}

/// `U(C L_0 ⊕ C d_0)`-rank of `Ω` with generation certificates for `t^k`,
/// `k ≤ max_k`, and an independence check with coefficient degrees up to
/// `max_uh_degree`.
///
/// Generation uses `g_N t^{N+1+j} = (β d_0 - β j - γ) t^j - Σ_{k<N} g_k t^{k+1+j}`
/// where `N = deg g`.
pub fn uh_rank(m: &OmegaModule, max_k: u32, max_uh_degree: u32) -> Result<UhRank> {
    let p = &m.params;
    let n = p.deg_g().ok_or_else(|| Error::Unsupported("U(H)-rank requires g != 0".into()))? as usize;
    let g = p.g.univariate_coeffs();
    let hs = uh_signature();
    let zero = SparsePoly::zero(&hs);
    let d0 = SparsePoly::var(&hs, 1);
    let mut exprs: Vec<Vec<SparsePoly>> = Vec::new();
    for k in 0..=max_k as usize {
        let e = if k <= n {
            let mut e = vec![zero.clone(); n + 1];
            e[k] = SparsePoly::one(&hs);
            e
        } else {
            let j = k - n - 1;
            let shift = scalar::int(j as i64) * &p.beta + &p.gamma;
            let mut factor = d0.scale(&p.beta);
            factor.add_term(vec![0, 0], -shift);
            let mut e: Vec<SparsePoly> = exprs[j].iter().map(|c| &factor * c).collect();
            for (i, gi) in g.iter().enumerate().take(n) {
                for (slot, c) in e.iter_mut().zip(&exprs[i + 1 + j]) {
                    slot.add_scaled(c, &-gi.clone());
                }
            }
            let inv = g[n].recip();
            e.iter().map(|c| c.scale(&inv)).collect()
        };
        exprs.push(e);
    }
    let mut expressions = Vec::new();
    let mut certificates = Vec::new();
    for (k, e) in exprs.into_iter().enumerate() {
        let expr = UhExpression { k: k as u32, coefficients: e };
        let mut cert = Certificate::new(m.one());
        cert.push(m, format!("t^{k} as a U(H)-combination of 1..t^{n}"), expr.as_operator())?;
        if cert.result != m.monomial(0, k as i64) {
            return Err(Error::Replay { step: 0, detail: format!("generation of t^{k} produced {}", cert.result) });
        }
        expressions.push(expr);
        certificates.push(cert);
    }
    let independence = uh_independence(m, n, max_uh_degree)?;
    Ok(UhRank { rank: n + 1, expressions, certificates, independence })
}

fn uh_independence(m: &OmegaModule, n: usize, deg: u32) -> Result<IndependenceCheck> {
    let mut columns = Vec::new();
    for j in 0..=n {
        for a in 0..=deg {
            for b in 0..=deg {
                let mut word = vec![Generator::l(0); a as usize];
                word.extend(std::iter::repeat_n(Generator::d(0), b as usize));
                columns.push(m.act_word(&word, &m.monomial(0, j as i64))?);
            }
        }
    }
    let mut keys: Vec<Vec<i64>> = columns.iter().flat_map(|c| c.terms().map(|(e, _)| e.clone())).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Scalar>> = keys.iter().map(|k| columns.iter().map(|c| c.coeff(k)).collect()).collect();
    let nullity = linalg::nullspace(&rows).len();
    Ok(IndependenceCheck { columns: columns.len(), max_uh_degree: deg, nullity })
}

/// Both sides of the generation recursion at index `j`:
/// `g_N t^{N+1+j}` and `(β d_0 - β j - γ) t^j - Σ_{k<N} g_k t^{k+1+j}`,
/// the latter computed with the module action.
pub fn recursion_sides(m: &OmegaModule, j: u32) -> Result<(SparsePoly, SparsePoly)> {
    let p = &m.params;
    let n = p.deg_g().ok_or_else(|| Error::Unsupported("recursion requires g != 0".into()))? as i64;
    let g = p.g.univariate_coeffs();
    let j = j as i64;
    let tj = m.monomial(0, j);
    let lhs = m.monomial(0, n + 1 + j).scale(&g[n as usize]);
    let mut rhs = m.act(Generator::d(0), &tj)?.scale(&p.beta);
    rhs.add_scaled(&tj, &-(scalar::int(j) * &p.beta + &p.gamma));
    for (k, gk) in g.iter().enumerate().take(n as usize) {
        rhs.add_scaled(&m.monomial(0, k as i64 + 1 + j), &-gk.clone());
    }
    Ok((lhs, rhs))
}

/// `t`-degree of `d_0^times f`; for `f ∈ C[t]` it is `deg f + times (deg g + 1)`.
pub fn d0_power_degree(m: &OmegaModule, f: &SparsePoly, times: u32) -> Result<Option<i64>> {
    let word = vec![Generator::d(0); times as usize];
    Ok(m.act_word(&word, f)?.degree_in(1))
}

/// Structure functions of a module that is free of rank one over
/// `U(C L_0 ⊕ C a_0) = C[L_0, a_0]` on a basis vector `v`:
/// `L_n v = λ^n (L_0 + n p(a_0)) v`, `a_n v = λ^n a_0 v`,
/// `b_n v = λ^n B_0 v`, `c_n v = λ^n C_0 v`, `d_n v = λ^n D_0 v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1ActionData {
    pub lambda: Scalar,
    /// Polynomial in `a0` (signature [`ub_signature`]).
    pub p: SparsePoly,
    /// Polynomials in `L0, a0`.
    pub b0: SparsePoly,
    pub c0: SparsePoly,
    pub d0: SparsePoly,
}

/// Variables `L0, a0` of `U(C L_0 ⊕ C a_0)`.
pub fn ub_signature() -> Signature {
    signature(vec![Var::poly("L0"), Var::poly("a0")])
}

/// The candidate module `C[L_0, a_0] v` defined by structure functions.
/// It is a `U(L)`-module exactly when the structure functions are
/// consistent.
#[derive(Clone, Debug)]
pub struct Rank1Candidate {
    data: Rank1ActionData,
    sig: Signature,
    p_emb: SparsePoly,
}

impl Rank1Candidate {
    pub fn new(data: Rank1ActionData) -> Result<Self> {
        if data.lambda.is_zero() {
            return Err(Error::InvalidSpec("lambda must be nonzero".into()));
        }
        let sig = ub_signature();
        for (name, q) in [("B0", &data.b0), ("C0", &data.c0), ("D0", &data.d0)] {
            if q.vars()[..] != sig[..] {
                return Err(Error::VariableMismatch(format!("{name} must be a polynomial in L0, a0")));
            }
        }
        if data.p.vars().len() != 1 {
            return Err(Error::VariableMismatch("p must be a polynomial in a0".into()));
        }
        let p_emb = data.p.embed(&sig, &[1]);
        Ok(Rank1Candidate { data, sig, p_emb })
    }
}

impl LModule for Rank1Candidate {
    fn signature(&self) -> Signature {
        self.sig.clone()
    }

    fn act(&self, x: Generator, f: &SparsePoly) -> Result<SparsePoly> {
        use crate::lie::Family::*;
        self.check_vector(f)?;
        let n = x.index;
        let lam_n = scalar::pow(&self.data.lambda, n);
        let shifted = f.shift(0, &scalar::int(n))?;
        let a0 = SparsePoly::var(&self.sig, 1);
        let out = match x.family {
            L => {
                let mut lin = SparsePoly::var(&self.sig, 0);
                lin.add_scaled(&self.p_emb, &scalar::int(n));
                lin.try_mul(&shifted)?
            }
            A => a0.try_mul(&shifted)?,
            B => {
                let mut out = self.data.b0.try_mul(&shifted)?;
                out.add_scaled(&self.data.c0.try_mul(&shifted.derive(1)?)?, &-Scalar::one());
                out
            }
            C => self.data.c0.try_mul(&shifted)?,
            D => {
                let mut out = self.data.d0.try_mul(&shifted)?;
                out.add_scaled(&a0.try_mul(&shifted.derive(1)?)?, &Scalar::one());
                out
            }
        };
        Ok(out.scale(&lam_n))
    }

    fn name(&self) -> String {
        format!(
            "rank-one candidate (lambda={}, p={}, B0={}, C0={}, D0={})",
            scalar::format(&self.data.lambda),
            self.data.p,
            self.data.b0,
            self.data.c0,
            self.data.d0
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank1Verdict {
    /// Isomorphic to `Ω` with these parameters (`v ↦ 1`).
    Omega(OmegaParams),
    /// `C_0 = 0`: the span of `L_0^i a_0^n v` with `n ≥ 1` is a proper
    /// submodule.
    Degenerate { submodule: String },
}

type Pairs = Vec<(Generator, Generator)>;

/// The consistency relations in the order they are used to pin the
/// structure functions down.
pub fn rank1_relations(window: i64) -> Vec<(&'static str, Pairs)> {
    use Generator as G;
    let w = || -window..=window;
    let pairs = |f: &dyn Fn(i64, i64) -> (G, G)| -> Pairs { w().flat_map(|m| w().map(move |n| (m, n))).map(|(m, n)| f(m, n)).collect() };
    vec![
        ("[a_1,c_n] = 0", w().map(|n| (G::a(1), G::c(n))).collect()),
        ("[L_m,c_n] = n c_{m+n}", pairs(&|m, n| (G::l(m), G::c(n)))),
        ("[b_m,c_n] = 0", pairs(&|m, n| (G::b(m), G::c(n)))),
        ("[c_m,d_n] = 0", pairs(&|m, n| (G::c(m), G::d(n)))),
        ("[L_m,b_n] = n b_{m+n}", pairs(&|m, n| (G::l(m), G::b(n)))),
        ("[L_m,d_n] = n d_{m+n}", pairs(&|m, n| (G::l(m), G::d(n)))),
        ("[b_0,d_0] = b_0", vec![(G::b(0), G::d(0))]),
        ("[b_m,d_n] = b_{m+n}", pairs(&|m, n| (G::b(m), G::d(n)))),
        ("all remaining brackets", {
            let gens = G::window(window);
            gens.iter().flat_map(|x| gens.iter().map(move |y| (*x, *y))).collect()
        }),
    ]
}

fn bracket_defect(m: &dyn LModule, x: Generator, y: Generator, v: &SparsePoly) -> Result<SparsePoly> {
    let xy = m.act(x, &m.act(y, v)?)?;
    let yx = m.act(y, &m.act(x, v)?)?;
    let br = m.act_free(&FreeElement::from_lie(&bracket(x, y)), v)?;
    Ok(&(&xy - &yx) - &br)
}

/// Checks the structure functions on indices in `[-2, 2]` and identifies
/// the module.
pub fn classify_rank1(data: &Rank1ActionData) -> Result<Rank1Verdict> {
    let cand = Rank1Candidate::new(data.clone())?;
    let sig = cand.signature();
    let samples: Vec<SparsePoly> =
        (0..=2).flat_map(|i| (0..=2).map(move |j| (i, j))).map(|(i, j)| SparsePoly::monomial(&sig, vec![i, j], Scalar::one())).collect();
    for (relation, pairs) in rank1_relations(2) {
        for (x, y) in pairs {
            for v in &samples {
                let defect = bracket_defect(&cand, x, y, v)?;
                if !defect.is_zero() {
                    return Err(Error::NotAModule {
                        relation: relation.to_string(),
                        detail: format!("[{x},{y}] applied to {v}: defect {defect}"),
                    });
                }
            }
        }
    }
    let structural = |detail: String| Error::NotAModule { relation: "structure functions".into(), detail };
    if !data.c0.is_constant() {
        return Err(structural(format!("C0 = {} is not constant", data.c0)));
    }
    let c0 = data.c0.constant_term();
    if c0.is_zero() {
        for v in samples.iter().filter(|v| v.degree_in(1).unwrap_or(0) >= 1) {
            for x in Generator::window(2) {
                let w = cand.act(x, v)?;
                if w.terms().any(|(e, _)| e[1] == 0) {
                    return Err(structural(format!("{x} {v} = {w} leaves a0 C[L0, a0] v")));
                }
            }
        }
        return Ok(Rank1Verdict::Degenerate { submodule: "span{ L0^i a0^n v : i >= 0, n >= 1 }".into() });
    }
    let beta = -c0;
    if !data.p.is_constant() {
        return Err(structural(format!("p = {} is not constant", data.p)));
    }
    let alpha = data.p.constant_term();
    if data.b0.degree_in(0).unwrap_or(0) > 0 {
        return Err(structural(format!("B0 = {} depends on L0", data.b0)));
    }
    let a0 = SparsePoly::var(&sig, 1);
    let gamma_poly = -&(&(&a0 * &data.b0) - &data.d0.scale(&beta));
    if !gamma_poly.is_constant() {
        return Err(structural(format!("a0 B0 - beta D0 = {} is not constant", -&gamma_poly)));
    }
    let g = SparsePoly::from_terms(&t_signature(), data.b0.terms().map(|(e, c)| (vec![e[1]], c.clone())));
    let params = OmegaParams::new(alpha, beta, gamma_poly.constant_term(), data.lambda.clone(), g)?;
    let back = read_off(&OmegaModule::new(params.clone()))?;
    if &back != data {
        return Err(structural(format!("extracted {params} does not reproduce the input")));
    }
    Ok(Rank1Verdict::Omega(params))
}

/// Structure functions of `Ω` on the basis vector `1` (with `s ↔ L_0`,
/// `t ↔ a_0`).
pub fn read_off(m: &OmegaModule) -> Result<Rank1ActionData> {
    let sig = ub_signature();
    let one = m.one();
    let rename = |f: SparsePoly| f.embed(&sig, &[0, 1]);
    let lambda = m.act(Generator::a(1), &one)?.coeff(&[0, 1]);
    // L_1 1 = λ (s + p) 1
    let l1 = m.act(Generator::l(1), &one)?.scale(&lambda.recip());
    let p_poly = &l1 - &SparsePoly::var(&m.signature(), 0);
    let p = SparsePoly::from_terms(&signature(vec![Var::poly("a0")]), p_poly.terms().map(|(e, c)| (vec![e[1]], c.clone())));
    Ok(Rank1ActionData {
        lambda,
        p,
        b0: rename(m.act(Generator::b(0), &one)?),
        c0: rename(m.act(Generator::c(0), &one)?),
        d0: rename(m.act(Generator::d(0), &one)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::module_axiom_check;
    use crate::module::monomial_basis;
    use crate::scalar::{frac, int};
    use Generator as G;

    fn tpoly(s: &str) -> SparsePoly {
        SparsePoly::parse(&t_signature(), s).unwrap()
    }

    fn omega(alpha: Scalar, beta: Scalar, gamma: Scalar, lambda: Scalar, g: &str) -> OmegaModule {
        OmegaModule::new(OmegaParams::new(alpha, beta, gamma, lambda, tpoly(g)).unwrap())
    }

    #[test]
    fn action_examples() {
        let m = omega(int(3), int(2), int(0), int(2), "t");
        let s = m.monomial(1, 0);
        assert_eq!(m.act(G::l(1), &s).unwrap(), SparsePoly::parse(&m.signature(), "2s^2 + 4s - 6").unwrap());
        assert_eq!(m.act(G::a(0), &m.one()).unwrap(), m.monomial(0, 1));
        let f = SparsePoly::parse(&m.signature(), "s*t + 1").unwrap();
        let shifted = f.shift(0, &int(2)).unwrap();
        assert_eq!(m.act(G::c(2), &f).unwrap(), shifted.scale(&int(-8)));
    }

    #[test]
    fn omega_is_a_module() {
        let m = omega(frac(1, 2), int(3), int(-1), frac(2, 3), "t^2 + 1");
        let basis = monomial_basis(&m.signature(), 2);
        assert!(module_axiom_check(&m, 1, &basis).unwrap().is_empty());
    }

    #[test]
    fn reduce_examples() {
        let m = omega(frac(1, 2), int(3), int(-1), frac(2, 3), "t^2 + 1");
        assert!(omega_reduce_to_one(&m, &m.one()).unwrap().steps.is_empty());
        let c = omega_reduce_to_one(&m, &m.monomial(0, 1)).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.result, m.one());
        let c = omega_reduce_to_one(&m, &m.monomial(1, 2)).unwrap();
        assert!(c.steps[0].op.terms().all(|(w, _)| w.len() == 1 && w[0].family == crate::lie::Family::C && (0..=1).contains(&w[0].index)));
        assert_eq!(c.steps.len(), 4);
        c.replay(&m).unwrap();
        assert!(matches!(omega_reduce_to_one(&m, &SparsePoly::zero(&m.signature())), Err(Error::ZeroVector)));
    }

    #[test]
    fn generate_examples() {
        let m = omega(int(1), int(1), int(0), int(5), "1");
        let c = omega_generate(&m, 2, 1).unwrap();
        assert_eq!(c.result, m.monomial(2, 1));
        assert_eq!(c.combined_op(), FreeElement::word(vec![G::l(0), G::l(0), G::a(0)], int(1)));
        c.replay(&m).unwrap();
    }

    #[test]
    fn uh_rank_examples() {
        let m = omega(int(0), int(1), int(0), int(2), "t");
        let r = uh_rank(&m, 6, 3).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.independence.nullity, 0);
        // t^2 = (d0 - 0 - 0) t^0 with β = 1, γ = 0, g = t
        let d0 = SparsePoly::var(&uh_signature(), 1);
        assert_eq!(r.expressions[2].coefficients, vec![d0, SparsePoly::zero(&uh_signature())]);
        for c in &r.certificates {
            c.replay(&m).unwrap();
        }
        let m1 = omega(int(0), int(3), int(2), int(2), "4");
        assert_eq!(uh_rank(&m1, 3, 2).unwrap().rank, 1);
        let m0 = omega(int(0), int(3), int(2), int(2), "0");
        assert!(matches!(uh_rank(&m0, 3, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn degree_law() {
        let m = omega(int(0), int(1), int(0), int(2), "t^2");
        assert_eq!(d0_power_degree(&m, &m.monomial(0, 2), 1).unwrap(), Some(5));
        assert_eq!(d0_power_degree(&m, &m.monomial(0, 1), 3).unwrap(), Some(10));
    }

    #[test]
    fn classify_round_trip() {
        let m = omega(frac(1, 2), int(3), int(0), int(2), "t^2");
        let data = read_off(&m).unwrap();
        let sig = ub_signature();
        assert_eq!(data.b0, SparsePoly::parse(&sig, "a0^2").unwrap());
        assert_eq!(data.c0, SparsePoly::constant(&sig, int(-3)));
        assert_eq!(data.d0, SparsePoly::parse(&sig, "a0^3/3").unwrap());
        assert_eq!(classify_rank1(&data).unwrap(), Rank1Verdict::Omega(m.params.clone()));
    }

    #[test]
    fn classify_degenerate_and_inconsistent() {
        let sig = ub_signature();
        let a = signature(vec![Var::poly("a0")]);
        let data = Rank1ActionData {
            lambda: int(3),
            p: SparsePoly::constant(&a, frac(1, 2)),
            b0: SparsePoly::zero(&sig),
            c0: SparsePoly::zero(&sig),
            d0: SparsePoly::parse(&sig, "a0^2 - 1").unwrap(),
        };
        assert!(matches!(classify_rank1(&data).unwrap(), Rank1Verdict::Degenerate { .. }));

        let mut bad = read_off(&omega(int(1), int(2), int(1), int(3), "t + 1")).unwrap();
        bad.p = SparsePoly::var(&a, 0);
        match classify_rank1(&bad) {
            Err(Error::NotAModule { relation, .. }) => assert_eq!(relation, "[L_m,b_n] = n b_{m+n}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn candidate_matches_omega_under_renaming() {
        let m = omega(frac(-1, 2), int(2), int(5), int(-3), "2t^2 - t");
        let cand = Rank1Candidate::new(read_off(&m).unwrap()).unwrap();
        let f = m.monomial(1, 2);
        let ff = f.embed(&cand.signature(), &[0, 1]);
        for g in G::window(2) {
            assert_eq!(cand.act(g, &ff).unwrap(), m.act(g, &f).unwrap().embed(&cand.signature(), &[0, 1]), "{g}");
        }
    }
}
