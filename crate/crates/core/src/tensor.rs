//! Tensor products `T = Ω(α_1, β_1, γ_1, λ_1, g_1) ⊗ … ⊗ Ω(α_m, …, g_m)`
//! realized on `C[s_1, …, s_m, t_1, …, t_m]`.
//!
//! The generator action is the Leibniz sum of the factor actions. For
//! distinct `λ_k` the component of `X_n g` coming from factor `k` is
//! `λ_k^n` times a polynomial in `n`, so finite windows of `X_n g`
//! separate the factors through [`crate::vandermonde`].

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{Family, FreeElement, Generator};
use crate::linalg::SpanBuilder;
use crate::module::{Certificate, LModule};
use crate::omega::{factor_act, generator_combination, OmegaParams};
use crate::poly::{signature, Exponents, Signature, SparsePoly, Var};
use crate::scalar::{self, Scalar};
use crate::vandermonde::FunctionFamily;

#[derive(Clone, Debug)]
pub struct TensorModule {
    pub factors: Vec<OmegaParams>,
    sig: Signature,
    g_embs: Vec<SparsePoly>,
}

impl TensorModule {
    pub fn new(factors: Vec<OmegaParams>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("a tensor product needs at least one factor".into()));
        }
        let m = factors.len();
        let mut vars: Vec<Var> = (1..=m).map(|k| Var::poly(&format!("s{k}"))).collect();
        vars.extend((1..=m).map(|k| Var::poly(&format!("t{k}"))));
        let sig = signature(vars);
        let g_embs = (0..m).map(|k| factors[k].g.embed(&sig, &[m + k])).collect();
        Ok(TensorModule { factors, sig, g_embs })
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    pub fn s(&self, k: usize) -> usize {
        k
    }

    pub fn t(&self, k: usize) -> usize {
        self.m() + k
    }

    /// `1^{⊗m}`.
    pub fn one(&self) -> SparsePoly {
        SparsePoly::one(&self.sig)
    }

    pub fn monomial(&self, p: &[i64], q: &[i64]) -> SparsePoly {
        SparsePoly::monomial(&self.sig, p.iter().chain(q).copied().collect(), Scalar::one())
    }

    pub fn parse_vector(&self, text: &str) -> Result<SparsePoly> {
        SparsePoly::parse(&self.sig, text)
    }

    /// First pair `(i, j)`, `i < j` (0-based), with `λ_i = λ_j`.
    pub fn repeated_lambda(&self) -> Option<(usize, usize)> {
        let m = self.m();
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).find(|&(i, j)| self.factors[i].lambda == self.factors[j].lambda)
    }

    fn require_distinct(&self) -> Result<()> {
        match self.repeated_lambda() {
            Some((i, j)) => Err(Error::NotApplicable(format!(
                "lambda_{} = lambda_{}: coefficient extraction needs pairwise distinct lambdas",
                i + 1,
                j + 1
            ))),
            None => Ok(()),
        }
    }

    fn lambdas(&self) -> Vec<Scalar> {
        self.factors.iter().map(|f| f.lambda.clone()).collect()
    }

    /// `P_k = deg_{s_k} g` for every factor.
    pub fn s_degrees(&self, g: &SparsePoly) -> Vec<u32> {
        (0..self.m()).map(|k| g.degree_in(self.s(k)).unwrap_or(0) as u32).collect()
    }
}

impl LModule for TensorModule {
    fn signature(&self) -> Signature {
        self.sig.clone()
    }

    fn act(&self, x: Generator, v: &SparsePoly) -> Result<SparsePoly> {
        self.check_vector(v)?;
        let mut out = SparsePoly::zero(&self.sig);
        for (k, p) in self.factors.iter().enumerate() {
            out.add_scaled(&factor_act(p, &self.g_embs[k], self.s(k), self.t(k), x, v)?, &Scalar::one());
        }
        Ok(out)
    }

    fn name(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ⊗ ")
    }
}

/// Lexicographic degree `(p, q)` of `v` in the order `s_1 … s_m t_1 … t_m`;
/// `None` is the degree of the zero vector, below every exponent tuple.
pub fn lex_degree(v: &SparsePoly) -> Option<Exponents> {
    v.leading().cloned()
}

pub fn compare_degree(a: &SparsePoly, b: &SparsePoly) -> Ordering {
    lex_degree(a).cmp(&lex_degree(b))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub basis: Vec<SparsePoly>,
    pub dim: usize,
    /// Indices `n = 0..window` were used.
    pub window: usize,
}

fn window_span(t: &TensorModule, families: &[Family], g: &SparsePoly, window: usize) -> Result<(SpanBuilder<Exponents>, Vec<SparsePoly>)> {
    let mut span = SpanBuilder::new();
    let mut basis = Vec::new();
    let mut add = |v: SparsePoly, span: &mut SpanBuilder<Exponents>| {
        if span.insert_poly(&v) {
            basis.push(v);
        }
    };
    add(g.clone(), &mut span);
    for n in 0..window as i64 {
        for &f in families {
            add(t.act(Generator::new(f, n), g)?, &mut span);
        }
    }
    Ok((span, basis))
}

/// `N(X, g) = span{g, X_n g : n ∈ Z}` for `X ∈ {L, a}`. The window starts
/// at one more than the number of coefficient functions `n^x λ_k^n` and
/// grows until the dimension has been stable `max(m, 2)` times in a row.
pub fn span_nxg(t: &TensorModule, x: Family, g: &SparsePoly) -> Result<SpanReport> {
    if !matches!(x, Family::L | Family::A) {
        return Err(Error::InvalidGenerator(format!("N(X, g) is defined for X = L or a, not {}", x.symbol())));
    }
    t.check_vector(g)?;
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let extra = if x == Family::L { 2 } else { 1 };
    let mut window: usize = t.s_degrees(g).iter().map(|&p| p as usize + extra).sum::<usize>() + 1;
    let (_, mut basis) = window_span(t, &[x], g, window)?;
    let mut stable = 0;
    while stable < t.m().max(2) {
        let (_, next) = window_span(t, &[x], g, window + 1)?;
        window += 1;
        if next.len() == basis.len() {
            stable += 1;
        } else {
            stable = 0;
        }
        basis = next;
    }
    Ok(SpanReport { dim: basis.len(), basis, window })
}

/// The three extractions: multiply by `s_k` (from `L_n`), multiply by
/// `t_k` (from `a_n`), or strip the top power of `s_k` while multiplying
/// by `t_k` (from `a_n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extraction {
    /// `s_k g ∈ N(L, g)`.
    SMultiply,
    /// `t_k g ∈ N(a, g)`.
    TMultiply,
    /// `Σ g_{(p,q)} s^{p - P_k e_k} t^{q + e_k}` over terms with `p_k = P_k`,
    /// an element of `N(a, g)`.
    TopStrip,
}

impl Extraction {
    fn label(self, k: usize) -> String {
        match self {
            Extraction::SMultiply => format!("multiply by s{} via an L-window", k + 1),
            Extraction::TMultiply => format!("multiply by t{} via an a-window", k + 1),
            Extraction::TopStrip => format!("strip top power of s{} via an a-window", k + 1),
        }
    }
}

impl std::str::FromStr for Extraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "s-multiply" => Ok(Extraction::SMultiply),
            "t" | "t-multiply" => Ok(Extraction::TMultiply),
            "strip" | "top-strip" => Ok(Extraction::TopStrip),
            _ => Err(Error::Parse(format!("unknown extraction {s:?} (expected s, t or strip)"))),
        }
    }
}

/// The window combination `Σ κ_n X_n` realizing an extraction on `g`.
pub fn extraction_op(t: &TensorModule, g: &SparsePoly, k: usize, which: Extraction) -> Result<FreeElement> {
    t.require_distinct()?;
    if k >= t.m() {
        return Err(Error::InvalidSpec(format!("factor {} out of range 1..={}", k + 1, t.m())));
    }
    let p = t.s_degrees(g);
    let (family, degrees) = match which {
        Extraction::SMultiply => (Family::L, p.iter().map(|d| d + 1).collect::<Vec<_>>()),
        _ => (Family::A, p.clone()),
    };
    let fam = FunctionFamily::new(&t.lambdas(), &degrees);
    let (x, norm) = match which {
        Extraction::TopStrip => (p[k], if p[k].is_multiple_of(2) { Scalar::one() } else { -Scalar::one() }),
        _ => (0, Scalar::one()),
    };
    let kappa: Vec<Scalar> = fam.dual(k, x)?.iter().map(|c| c * &norm).collect();
    Ok(generator_combination(family, &kappa, 0))
}

/// Applies one extraction and returns the resulting vector with its
/// one-step certificate.
pub fn extract(t: &TensorModule, g: &SparsePoly, k: usize, which: Extraction) -> Result<(SparsePoly, Certificate)> {
    t.check_vector(g)?;
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let op = extraction_op(t, g, k, which)?;
    let mut cert = Certificate::new(g.clone());
    cert.push(t, which.label(k), op)?;
    Ok((cert.result.clone(), cert))
}

/// `β_k⁻¹(w_k - Σ_i g_{k,i} u_k^i)` where `w_k`, `u_k` are the `b`- and
/// `a`-window combinations isolating factor `k`; acts as `∂_{t_k}` on
/// vectors free of `s`.
pub fn dt_op(t: &TensorModule, k: usize) -> Result<FreeElement> {
    t.require_distinct()?;
    let fam = FunctionFamily::new(&t.lambdas(), &vec![0; t.m()]);
    let kappa = fam.dual(k, 0)?;
    let w = generator_combination(Family::B, &kappa, 0);
    let u = generator_combination(Family::A, &kappa, 0);
    let f = &t.factors[k];
    let g_u = u.eval_poly(&f.g.univariate_coeffs());
    Ok(w.sub(&g_u).scale(&f.beta.recip()))
}

/// Certificate taking a nonzero `g` to exactly `1^{⊗m}`: top-strip steps
/// remove every `s_k`, `∂_{t_k}` steps remove every `t_k`, and a final
/// rescaling.
pub fn tensor_reduce_to_bottom(t: &TensorModule, g: &SparsePoly) -> Result<Certificate> {
    t.check_vector(g)?;
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    t.require_distinct()?;
    let mut cert = Certificate::new(g.clone());
    for k in 0..t.m() {
        if cert.result.degree_in(t.s(k)).unwrap_or(0) > 0 {
            let op = extraction_op(t, &cert.result, k, Extraction::TopStrip)?;
            cert.push(t, Extraction::TopStrip.label(k), op)?;
        }
    }
    for k in 0..t.m() {
        let mut dt = None;
        while cert.result.degree_in(t.t(k)).unwrap_or(0) > 0 {
            let op = match &dt {
                Some(op) => op,
                None => dt.insert(dt_op(t, k)?),
            };
            cert.push(t, format!("d/dt{}", k + 1), op.clone())?;
        }
    }
    let c = cert.result.constant_term();
    if !cert.result.is_constant() || c.is_zero() {
        return Err(Error::Replay { step: cert.steps.len(), detail: format!("reduction ended at {}", cert.result) });
    }
    if !c.is_one() {
        cert.push(t, "rescale", FreeElement::scalar(c.recip()))?;
    }
    Ok(cert)
}

/// Certificate producing `s^p t^q` from `1^{⊗m}`: `t`-multiplications,
/// then `s`-multiplications.
pub fn tensor_generate(t: &TensorModule, p: &[u32], q: &[u32]) -> Result<Certificate> {
    t.require_distinct()?;
    if p.len() != t.m() || q.len() != t.m() {
        return Err(Error::InvalidSpec(format!("exponent vectors must have length {}", t.m())));
    }
    let mut cert = Certificate::new(t.one());
    for (which, exps) in [(Extraction::TMultiply, q), (Extraction::SMultiply, p)] {
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                let op = extraction_op(t, &cert.result, k, which)?;
                cert.push(t, which.label(k), op)?;
            }
        }
    }
    Ok(cert)
}

/// One-step certificate producing an arbitrary `v` from `1^{⊗m}`: the
/// combination of the generating operators of its monomials.
pub fn tensor_generate_vector(t: &TensorModule, v: &SparsePoly) -> Result<Certificate> {
    t.check_vector(v)?;
    let m = t.m();
    let mut op = FreeElement::zero();
    for (e, c) in v.terms() {
        let p: Vec<u32> = e[..m].iter().map(|&x| x as u32).collect();
        let q: Vec<u32> = e[m..].iter().map(|&x| x as u32).collect();
        op = op.add(&tensor_generate(t, &p, &q)?.combined_op().scale(c));
    }
    let mut cert = Certificate::new(t.one());
    cert.push(t, "combination of monomial generators", op)?;
    Ok(cert)
}

/// `R_g = dim span{g, a_n g, c_n g : n ∈ Z}`, computed over the window
/// `n = 0..Σ_k (P_k + 1)`, which covers every coefficient function.
pub fn r_g(t: &TensorModule, g: &SparsePoly) -> Result<usize> {
    t.check_vector(g)?;
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let window = t.s_degrees(g).iter().map(|&p| p as usize + 1).sum();
    Ok(window_span(t, &[Family::A, Family::C], g, window)?.1.len())
}

/// Whether `g ∈ C[t_1, …, t_m]`.
pub fn is_s_free(t: &TensorModule, g: &SparsePoly) -> bool {
    t.s_degrees(g).iter().all(|&p| p == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicitySample {
    pub vector: SparsePoly,
    pub reduce: Certificate,
    pub generate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    /// 1-based factor indices with equal `λ`.
    pub pair: (usize, usize),
    pub description: String,
    pub window: i64,
    pub max_degree: u32,
    pub vectors: usize,
    pub images: usize,
    /// Images of truncated basis vectors that leave `W`.
    pub escapes: usize,
    /// Images whose degree exceeds the truncation; membership is still
    /// tested exactly.
    pub beyond_truncation: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum SimplicityDecision {
    /// Distinct `λ`'s: sampled vectors reduce to `1^{⊗m}` and are
    /// regenerated from it. This is evidence at desk scale, not an
    /// exhaustive proof.
    Simple { samples: Vec<SimplicitySample> },
    NotSimple { witness: WitnessCheck },
}

/// Simplicity of `T`: constructive reductions on `samples` random vectors
/// of degree at most 2 when the `λ`'s are distinct, otherwise the exact
/// invariance check of `W = span{ C[other variables] (s_i + s_j)^p }`.
pub fn simplicity_decision<R: Rng>(t: &TensorModule, samples: usize, rng: &mut R) -> Result<SimplicityDecision> {
    match t.repeated_lambda() {
        None => {
            let mut out = Vec::new();
            for _ in 0..samples {
                let v = crate::sample::vector(rng, &t.sig, 2);
                let reduce = tensor_reduce_to_bottom(t, &v)?;
                let generate = tensor_generate_vector(t, &v)?;
                out.push(SimplicitySample { vector: v, reduce, generate });
            }
            Ok(SimplicityDecision::Simple { samples: out })
        }
        Some((i, j)) => Ok(SimplicityDecision::NotSimple { witness: witness_check(t, i, j, 3, 6)? }),
    }
}

/// Membership in `W`: `∂f/∂s_i = ∂f/∂s_j`.
pub fn in_witness(t: &TensorModule, i: usize, j: usize, f: &SparsePoly) -> Result<bool> {
    Ok(f.derive(t.s(i))? == f.derive(t.s(j))?)
}

/// Spanning set of `W` truncated at total degree `max_degree`:
/// `(s_i + s_j)^p` times monomials in the remaining variables.
pub fn witness_basis(t: &TensorModule, i: usize, j: usize, max_degree: u32) -> Vec<SparsePoly> {
    let sig = &t.sig;
    let others: Vec<usize> = (0..sig.len()).filter(|&v| v != t.s(i) && v != t.s(j)).collect();
    let sum = &SparsePoly::var(sig, t.s(i)) + &SparsePoly::var(sig, t.s(j));
    let mut out = Vec::new();
    let mut power = SparsePoly::one(sig);
    for p in 0..=max_degree {
        let budget = (max_degree - p) as i64;
        let rest = crate::poly::signature(others.iter().map(|&v| sig[v].clone()).collect());
        for mono in crate::module::monomial_basis(&rest, budget) {
            let mono = mono.embed(sig, &others);
            out.push(&power * &mono);
        }
        power = &power * &sum;
    }
    out
}

pub fn witness_check(t: &TensorModule, i: usize, j: usize, window: i64, max_degree: u32) -> Result<WitnessCheck> {
    let basis = witness_basis(t, i, j, max_degree);
    let (mut images, mut escapes, mut beyond) = (0, 0, 0);
    for v in &basis {
        for x in Generator::window(window) {
            let w = t.act(x, v)?;
            images += 1;
            if w.total_degree().unwrap_or(0) > max_degree as i64 {
                beyond += 1;
            }
            if !in_witness(t, i, j, &w)? {
                escapes += 1;
            }
        }
    }
    let others = if t.m() > 2 { "remaining variables" } else { "t1,t2" };
    Ok(WitnessCheck {
        pair: (i + 1, j + 1),
        description: format!("W = C[{others}](s{}+s{})^p", i + 1, j + 1),
        window,
        max_degree,
        vectors: basis.len(),
        images,
        escapes,
        beyond_truncation: beyond,
    })
}

/// A factor's parameters in the order used for canonical sorting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CanonicalFactor {
    #[serde(with = "scalar::serde_str")]
    pub lambda: Scalar,
    #[serde(with = "scalar::serde_str")]
    pub alpha: Scalar,
    #[serde(with = "scalar::serde_str")]
    pub beta: Scalar,
    #[serde(with = "scalar::serde_str")]
    pub gamma: Scalar,
    #[serde(serialize_with = "serialize_scalars")]
    pub g: Vec<Scalar>,
    /// `-1` for `g = 0`.
    pub deg_g: i64,
}

fn serialize_scalars<S: serde::Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(scalar::format))
}

impl CanonicalFactor {
    pub fn of(p: &OmegaParams) -> Self {
        let g = p.g.univariate_coeffs();
        CanonicalFactor {
            lambda: p.lambda.clone(),
            alpha: p.alpha.clone(),
            beta: p.beta.clone(),
            gamma: p.gamma.clone(),
            deg_g: g.len() as i64 - 1,
            g,
        }
    }
}

pub fn canonical_form(t: &TensorModule) -> Vec<CanonicalFactor> {
    let mut out: Vec<CanonicalFactor> = t.factors.iter().map(CanonicalFactor::of).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum IsoVerdict {
    /// Factor `k` of the first module matches factor `permutation[k]`
    /// (1-based) of the second; the isomorphism reindexes factors and
    /// sends `1^{⊗m}` to `1^{⊗m}`.
    Isomorphic { permutation: Vec<usize> },
    NotIsomorphic { invariant: String, detail: String },
}

pub fn iso_check(t1: &TensorModule, t2: &TensorModule) -> Result<IsoVerdict> {
    for (name, t) in [("first", t1), ("second", t2)] {
        if let Some((i, j)) = t.repeated_lambda() {
            return Err(Error::RequiresSimple(format!(
                "{name} module has lambda_{} = lambda_{} and is not simple",
                i + 1,
                j + 1
            )));
        }
    }
    if t1.m() != t2.m() {
        let (r1, r2) = (r_g(t1, &t1.one())?, r_g(t2, &t2.one())?);
        return Ok(IsoVerdict::NotIsomorphic {
            invariant: "factor count".into(),
            detail: format!("m = {} vs {} (R of 1 is {r1} vs {r2})", t1.m(), t2.m()),
        });
    }
    let (c1, c2) = (canonical_form(t1), canonical_form(t2));
    type Field = (&'static str, fn(&CanonicalFactor) -> String);
    let fields: [Field; 5] = [
        ("lambda", |f| scalar::format(&f.lambda)),
        ("alpha", |f| scalar::format(&f.alpha)),
        ("beta", |f| scalar::format(&f.beta)),
        ("gamma", |f| scalar::format(&f.gamma)),
        ("g", |f| f.g.iter().map(scalar::format).collect::<Vec<_>>().join(",")),
    ];
    for (name, get) in fields {
        let a: Vec<String> = c1.iter().map(get).collect();
        let b: Vec<String> = c2.iter().map(get).collect();
        if a != b {
            return Ok(IsoVerdict::NotIsomorphic { invariant: name.into(), detail: format!("[{}] vs [{}]", a.join("; "), b.join("; ")) });
        }
    }
    let keys2: Vec<CanonicalFactor> = t2.factors.iter().map(CanonicalFactor::of).collect();
    let permutation = t1
        .factors
        .iter()
        .map(|f| {
            let key = CanonicalFactor::of(f);
            keys2.iter().position(|k| *k == key).expect("canonical forms agree") + 1
        })
        .collect();
    Ok(IsoVerdict::Isomorphic { permutation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::t_signature;
    use crate::module::{module_axiom_check, monomial_basis};
    use crate::scalar::{frac, int};
    use rand::SeedableRng;
    use Generator as G;

    fn factor(alpha: Scalar, beta: i64, gamma: i64, lambda: i64, g: &str) -> OmegaParams {
        OmegaParams::new(alpha, int(beta), int(gamma), int(lambda), SparsePoly::parse(&t_signature(), g).unwrap()).unwrap()
    }

    fn two(l1: i64, l2: i64) -> TensorModule {
        TensorModule::new(vec![factor(frac(1, 2), 2, 1, l1, "t + 1"), factor(int(-1), 3, 0, l2, "t^2")]).unwrap()
    }

    #[test]
    fn leibniz_examples() {
        let t = two(2, 3);
        assert_eq!(t.act(G::a(0), &t.one()).unwrap(), t.parse_vector("t1 + t2").unwrap());
        for n in -2..=2 {
            let want = -(scalar::pow(&int(2), n) * int(2) + scalar::pow(&int(3), n) * int(3));
            assert_eq!(t.act(G::c(n), &t.one()).unwrap(), SparsePoly::constant(&t.signature(), want));
        }
    }

    #[test]
    fn single_factor_matches_omega() {
        let p = factor(frac(1, 3), 2, -1, 5, "t^2 - 1");
        let t = TensorModule::new(vec![p.clone()]).unwrap();
        let o = crate::omega::OmegaModule::new(p);
        let f = SparsePoly::parse(&o.signature(), "s^2*t + t - 3").unwrap();
        let tf = f.embed(&t.signature(), &[0, 1]);
        for x in G::window(2) {
            assert_eq!(t.act(x, &tf).unwrap(), o.act(x, &f).unwrap().embed(&t.signature(), &[0, 1]));
        }
    }

    #[test]
    fn tensor_is_a_module() {
        let t = two(2, -1);
        let basis = monomial_basis(&t.signature(), 1);
        assert!(module_axiom_check(&t, 1, &basis).unwrap().is_empty());
    }

    #[test]
    fn spans() {
        let t = two(2, 3);
        let n = span_nxg(&t, Family::A, &t.one()).unwrap();
        assert_eq!(n.dim, 3);
        let t1 = TensorModule::new(vec![factor(int(0), 1, 0, 2, "1")]).unwrap();
        let g = t1.parse_vector("t1").unwrap();
        assert_eq!(span_nxg(&t1, Family::A, &g).unwrap().dim, 2);
        let nl = span_nxg(&t, Family::L, &t.one()).unwrap();
        assert_eq!(nl.dim, 3);
        assert!(span_nxg(&t, Family::B, &t.one()).is_err());
    }

    #[test]
    fn extraction_examples() {
        let t1 = TensorModule::new(vec![factor(int(3), 1, 0, 2, "1")]).unwrap();
        let (v, c) = extract(&t1, &t1.one(), 0, Extraction::TMultiply).unwrap();
        assert_eq!(v, t1.parse_vector("t1").unwrap());
        c.replay(&t1).unwrap();
        let (v, c) = extract(&t1, &t1.one(), 0, Extraction::SMultiply).unwrap();
        assert_eq!(v, t1.parse_vector("s1").unwrap());
        c.replay(&t1).unwrap();
        let t = two(2, 3);
        let (v, _) = extract(&t, &t.parse_vector("s1").unwrap(), 0, Extraction::TopStrip).unwrap();
        assert_eq!(v, t.parse_vector("t1").unwrap());
        assert!(matches!(extract(&two(2, 2), &t.one(), 0, Extraction::TMultiply), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn reduce_and_generate() {
        let t = two(2, 3);
        assert!(tensor_reduce_to_bottom(&t, &t.one()).unwrap().steps.is_empty());
        let g = t.parse_vector("s1*t2").unwrap();
        let c = tensor_reduce_to_bottom(&t, &g).unwrap();
        c.replay(&t).unwrap();
        assert_eq!(c.result, t.one());
        let c = tensor_generate(&t, &[0, 0], &[1, 1]).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert_eq!(c.result, t.parse_vector("t1*t2").unwrap());
        let c = tensor_generate(&t, &[1, 0], &[0, 0]).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.result, t.parse_vector("s1").unwrap());
        let v = t.parse_vector("s1^2*t2 - 3s2 + 1/2").unwrap();
        assert_eq!(tensor_generate_vector(&t, &v).unwrap().result, v);
    }

    #[test]
    fn rank_examples() {
        let t1 = TensorModule::new(vec![factor(int(0), 1, 0, 2, "t")]).unwrap();
        assert_eq!(r_g(&t1, &t1.parse_vector("s1").unwrap()).unwrap(), 4);
        let t = two(2, 3);
        assert_eq!(r_g(&t, &t.one()).unwrap(), 3);
        assert_eq!(r_g(&t, &t.parse_vector("t1^3").unwrap()).unwrap(), 3);
    }

    #[test]
    fn simplicity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        match simplicity_decision(&two(2, 3), 2, &mut rng).unwrap() {
            SimplicityDecision::Simple { samples } => {
                for s in samples {
                    s.reduce.replay(&two(2, 3)).unwrap();
                    assert_eq!(s.generate.result, s.vector);
                }
            }
            other => panic!("{other:?}"),
        }
        let t = two(2, 2);
        let w = witness_check(&t, 0, 1, 2, 3).unwrap();
        assert_eq!(w.escapes, 0);
        assert!(in_witness(&t, 0, 1, &t.parse_vector("(s1+s2)^2*t1").unwrap()).unwrap());
        assert!(!in_witness(&t, 0, 1, &t.parse_vector("s1").unwrap()).unwrap());
    }

    #[test]
    fn isomorphism() {
        let a = factor(frac(1, 2), 2, 1, 2, "t + 1");
        let b = factor(int(-1), 3, 0, 5, "t^2");
        let t_ab = TensorModule::new(vec![a.clone(), b.clone()]).unwrap();
        let t_ba = TensorModule::new(vec![b.clone(), a.clone()]).unwrap();
        assert_eq!(canonical_form(&t_ab), canonical_form(&t_ba));
        assert_eq!(iso_check(&t_ab, &t_ba).unwrap(), IsoVerdict::Isomorphic { permutation: vec![2, 1] });
        let mut a2 = a.clone();
        a2.gamma = int(7);
        let t2 = TensorModule::new(vec![a2, b.clone()]).unwrap();
        assert!(matches!(iso_check(&t_ab, &t2).unwrap(), IsoVerdict::NotIsomorphic { invariant, .. } if invariant == "gamma"));
        let t1 = TensorModule::new(vec![a]).unwrap();
        assert!(matches!(iso_check(&t1, &t_ab).unwrap(), IsoVerdict::NotIsomorphic { invariant, .. } if invariant == "factor count"));
        assert!(matches!(iso_check(&two(2, 2), &t_ab), Err(Error::RequiresSimple(_))));
    }
}
